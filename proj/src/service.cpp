#include "trim/service.hpp"

#include "trim/io.hpp"
#include "trim/pipeline.hpp"

#include <httplib.h>
#include <json.hpp>

#include <iostream>

namespace trim {

namespace {

HttpReply error_reply(int status, const std::string& message, std::optional<int> line = std::nullopt)
{
    nlohmann::ordered_json doc;
    doc["error"] = message;
    if (line)
        doc["line"] = *line;
    return {status, doc.dump()};
}

} // namespace

HttpReply handle_health()
{
    return {200, R"({"ok":true})"};
}

HttpReply handle_mesh(std::string_view body)
{
    try {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(body);
        } catch (const nlohmann::json::parse_error& e) {
            return error_reply(400, std::string("request body: ") + e.what());
        }
        if (!doc.is_object() || !doc.contains("mg") || !doc["mg"].is_string())
            return error_reply(400, "request needs a string field 'mg'");
        MeshParams params;
        if (auto it = doc.find("params"); it != doc.end())
            params = params_from_json(it->dump());

        const MeshRun run = run_mesh(doc["mg"].get<std::string>(), params);
        nlohmann::json warnings = nlohmann::json::array();
        for (const auto& w : run.warnings)
            warnings.push_back(describe(w));
        std::string out = "{\"mesh\":" + export_json(run.mesh) + ",\"stats\":" + stats_json(run.stats) +
                          ",\"warnings\":" + warnings.dump() + "}";
        return {200, std::move(out)};
    } catch (const MeshError& e) {
        return error_reply(400, e.what(), e.line());
    } catch (const std::exception& e) {
        return error_reply(500, e.what());
    }
}

bool serve(const std::string& host, int port, const std::filesystem::path& web_root)
{
    httplib::Server server;
    auto send = [](httplib::Response& res, const HttpReply& reply) {
        res.status = reply.status;
        res.set_content(reply.body, reply.content_type);
    };
    server.Get("/api/health", [&](const httplib::Request&, httplib::Response& res) { send(res, handle_health()); });
    server.Post("/api/mesh",
                [&](const httplib::Request& req, httplib::Response& res) { send(res, handle_mesh(req.body)); });
    if (!server.set_mount_point("/", web_root.string()))
        std::cerr << "trimgen: web root " << web_root << " not found, serving the API only\n";
    std::cerr << "trimgen: listening on http://" << host << ':' << port << '\n';
    return server.listen(host, port);
}

} // namespace trim
