#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace trim {

struct HttpReply
{
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

HttpReply handle_health();

/// Body: {"mg": "<.mg text>", "params": {...}}. Replies with the mesh,
/// statistics and warnings, or 400 with {"error", "line"?}.
HttpReply handle_mesh(std::string_view body);

/// Blocks serving the API plus the static files under `web_root`.
/// Returns false if the port could not be bound.
bool serve(const std::string& host, int port, const std::filesystem::path& web_root);

} // namespace trim
