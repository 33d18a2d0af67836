#include "trim/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>

namespace trim {

namespace {

void put_fixed17(std::string& out, double v)
{
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    out.append(buf, static_cast<std::size_t>(n));
}

void put_short(std::string& out, double v)
{
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, r.ptr);
}

[[noreturn]] void bad(const std::string& what)
{
    throw MeshError(DiagnosticCode::ParseError, "mesh JSON: " + what);
}

} // namespace

std::string export_json(const Mesh& mesh)
{
    std::string out = "{\"nodes\":[";
    for (std::size_t i = 0; i < mesh.nn(); ++i) {
        out += i ? ",[" : "[";
        put_fixed17(out, mesh.points[i].x);
        out += ',';
        put_fixed17(out, mesh.points[i].y);
        out += ']';
    }
    out += "],\"edges\":[";
    for (std::size_t i = 0; i < mesh.nl(); ++i) {
        const Edge& e = mesh.edges[i];
        out += i ? ",[" : "[";
        out += std::to_string(e.a) + ',' + std::to_string(e.b) + ',' + std::to_string(e.left) + ',' +
               std::to_string(e.right) + ',' + (e.boundary ? "true" : "false") + ']';
    }
    out += "],\"triangles\":[";
    for (std::size_t i = 0; i < mesh.nt(); ++i) {
        const auto& n = mesh.triangles[i].nodes;
        out += i ? ",[" : "[";
        out += std::to_string(n[0]) + ',' + std::to_string(n[1]) + ',' + std::to_string(n[2]) + ']';
    }
    out += "]}";
    return out;
}

Mesh import_json(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        bad(e.what());
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges") || !doc.contains("triangles"))
        bad("expected an object with nodes, edges and triangles");

    Mesh mesh;
    try {
        for (const auto& p : doc.at("nodes")) {
            if (!p.is_array() || p.size() != 2)
                bad("node must be [x, y]");
            mesh.points.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        const auto nn = static_cast<NodeId>(mesh.nn());
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 5)
                bad("edge must be [a, b, left, right, boundary]");
            Edge edge{e[0].get<NodeId>(), e[1].get<NodeId>(), e[2].get<TriId>(), e[3].get<TriId>(),
                      e[4].get<bool>(), false};
            if (edge.a < 0 || edge.a >= nn || edge.b < 0 || edge.b >= nn)
                bad("edge node out of range");
            mesh.edges.push_back(edge);
        }
        for (const auto& t : doc.at("triangles")) {
            if (!t.is_array() || t.size() != 3)
                bad("triangle must be [n1, n2, n3]");
            Triangle tri{{t[0].get<NodeId>(), t[1].get<NodeId>(), t[2].get<NodeId>()}, {}};
            for (NodeId n : tri.nodes)
                if (n < 0 || n >= nn)
                    bad("triangle node out of range");
            mesh.triangles.push_back(tri);
        }
    } catch (const nlohmann::json::exception& e) {
        bad(e.what());
    }

    const MeshEditor index(mesh);
    for (auto& tri : mesh.triangles)
        for (int i = 0; i < 3; ++i) {
            const auto e = index.find_edge(tri.nodes[i], tri.nodes[(i + 1) % 3]);
            if (!e)
                bad("triangle side without an edge");
            tri.edges[i] = *e;
        }
    return mesh;
}

std::string render_svg(const Mesh& mesh, const SvgStyle& style)
{
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
    if (mesh.nn() > 0) {
        x0 = x1 = mesh.points[0].x;
        y0 = y1 = mesh.points[0].y;
        for (Point2 p : mesh.points) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
    }
    double extent = std::max(x1 - x0, y1 - y0);
    if (!(extent > 0.0))
        extent = 1.0;
    const double m = 0.05 * extent;

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    put_short(out, x0 - m);
    out += ' ';
    put_short(out, -(y1 + m));
    out += ' ';
    put_short(out, x1 - x0 + 2 * m);
    out += ' ';
    put_short(out, y1 - y0 + 2 * m);
    out += "\">\n";

    auto group = [&](bool boundary) {
        out += "<g class=\"";
        out += boundary ? "boundary" : "interior";
        out += "\" stroke=\"" + (boundary ? style.boundary_color : style.interior_color) + "\" stroke-width=\"";
        put_short(out, boundary ? style.boundary_width : style.line_width);
        out += "\" vector-effect=\"non-scaling-stroke\" stroke-linecap=\"round\">\n";
        for (const Edge& e : mesh.edges) {
            if (e.boundary != boundary)
                continue;
            const Point2 a = mesh.point(e.a);
            const Point2 b = mesh.point(e.b);
            out += "<line x1=\"";
            put_short(out, a.x);
            out += "\" y1=\"";
            put_short(out, 0.0 - a.y);
            out += "\" x2=\"";
            put_short(out, b.x);
            out += "\" y2=\"";
            put_short(out, 0.0 - b.y);
            out += "\" vector-effect=\"non-scaling-stroke\"/>\n";
        }
        out += "</g>\n";
    };
    group(false);
    group(true);
    out += "</svg>\n";
    return out;
}

} // namespace trim
