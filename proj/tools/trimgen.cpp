#include "trim/io.hpp"
#include "trim/pipeline.hpp"
#include "trim/service.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#ifndef TRIM_WEB_ROOT
#define TRIM_WEB_ROOT "web"
#endif

namespace {

enum Exit
{
    kOk = 0,
    kWarning = 1,
    kInputError = 2,
    kInternalError = 3,
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw trim::MeshError(trim::DiagnosticCode::ParseError, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
}

struct GenerationFlags
{
    std::string input;
    std::string method = "steiner";
    std::string afm_version = "first";
    std::string swap = "delaunay";
    bool smooth = false;
    bool final_edge_check = false;
    double factor = 1.0;
    std::string spacing = "uniform:10";
    bool spline = false;

    void add_to(CLI::App& cmd)
    {
        cmd.add_option("--method", method, "delaunay | afm | steiner")
            ->check(CLI::IsMember({"delaunay", "afm", "steiner"}));
        cmd.add_option("--afm-version", afm_version, "first | smallest")
            ->check(CLI::IsMember({"first", "smallest"}));
        cmd.add_option("--swap", swap, "delaunay | minmax | none")->check(CLI::IsMember({"delaunay", "minmax", "none"}));
        cmd.add_flag("--smooth", smooth, "spring smoothing");
        cmd.add_flag("--final-edge-check", final_edge_check, "fail if any two edges cross");
        cmd.add_option("--factor", factor, "Steiner insertion factor in [1, 3]")->check(CLI::Range(1.0, 3.0));
        cmd.add_option("--spacing", spacing,
                       "uniform:D | circular:DA,DB,BETA,XS,YS | stripe:DA,DB,ALPHA_DEG,L,XC,YC");
        cmd.add_flag("--spline", spline, "fit cubic splines through the boundary points");
    }

    trim::MeshParams params() const
    {
        trim::MeshParams p;
        p.method = trim::parse_method(method);
        p.afm_version = trim::parse_afm_version(afm_version);
        p.swap = trim::parse_swap(swap);
        p.smoothing = smooth;
        p.final_edge_check = final_edge_check;
        p.factor = factor;
        p.spacing = trim::parse_spacing(spacing);
        p.use_spline = spline;
        trim::validate_params(p);
        return p;
    }
};

int report_warnings(const trim::Warnings& warnings)
{
    for (const auto& w : warnings)
        std::cerr << "warning: " << trim::describe(w) << '\n';
    return warnings.empty() ? kOk : kWarning;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-dimensional unstructured triangular mesh generator"};
    app.require_subcommand(1);

    GenerationFlags gen;
    std::string out_json;
    std::string out_svg;
    auto* mesh_cmd = app.add_subcommand("mesh", "mesh a .mg domain");
    mesh_cmd->add_option("--input", gen.input, ".mg boundary file")->required();
    gen.add_to(*mesh_cmd);
    mesh_cmd->add_option("--out", out_json, "write the mesh JSON here (default: standard output)");
    mesh_cmd->add_option("--svg", out_svg, "write an SVG drawing here");

    GenerationFlags stats_gen;
    std::string stats_mesh;
    int kind = 0;
    auto* stats_cmd = app.add_subcommand("stats", "quality histograms of a mesh");
    auto* stats_input = stats_cmd->add_option("--input", stats_gen.input, ".mg boundary file to mesh first");
    stats_cmd->add_option("--mesh", stats_mesh, "mesh JSON written by 'mesh'")->excludes(stats_input);
    stats_gen.add_to(*stats_cmd);
    stats_cmd->add_option("--kind", kind, "statistic 1..5 (default: all)")->check(CLI::Range(1, 5));

    std::string host = "127.0.0.1";
    int port = 8080;
    std::string web_root = TRIM_WEB_ROOT;
    auto* serve_cmd = app.add_subcommand("serve", "HTTP service for the web UI");
    serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--host", host, "bind address");
    serve_cmd->add_option("--web-root", web_root, "directory of static files served at /");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*mesh_cmd) {
            const trim::MeshParams params = gen.params();
            const trim::MeshRun run = trim::run_mesh(read_file(gen.input), params);
            const std::string json = trim::export_json(run.mesh);
            if (out_json.empty())
                std::cout << json << '\n';
            else
                write_file(out_json, json + '\n');
            if (!out_svg.empty())
                write_file(out_svg, trim::render_svg(run.mesh));
            std::cerr << "nodes " << run.mesh.nn() << ", edges " << run.mesh.nl() << ", triangles "
                      << run.mesh.nt() << '\n';
            return report_warnings(run.warnings);
        }
        if (*stats_cmd) {
            trim::Mesh mesh;
            trim::Warnings warnings;
            const trim::MeshParams params = stats_gen.params();
            if (!stats_mesh.empty()) {
                mesh = trim::import_json(read_file(stats_mesh));
            } else if (!stats_gen.input.empty()) {
                trim::MeshRun run = trim::run_mesh(read_file(stats_gen.input), params);
                mesh = std::move(run.mesh);
                warnings = std::move(run.warnings);
            } else {
                std::cerr << "stats: give --input or --mesh\n";
                return kInputError;
            }
            for (int k = 1; k <= 5; ++k)
                if (kind == 0 || kind == k) {
                    std::cout << trim::format_report(trim::stmsh(mesh, params.spacing, static_cast<trim::StatKind>(k),
                                                                 k == 1 && !stats_mesh.empty() ? &warnings : nullptr));
                }
            return report_warnings(warnings);
        }
        if (*serve_cmd)
            return trim::serve(host, port, web_root) ? kOk : kInternalError;
    } catch (const trim::MeshError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kOk;
}
