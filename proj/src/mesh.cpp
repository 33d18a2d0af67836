#include "trim/mesh.hpp"

#include "trim/diagnostics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace trim {

double Mesh::triangle_area(TriId t) const
{
    const auto& n = triangle(t).nodes;
    return signed_area(point(n[0]), point(n[1]), point(n[2]));
}

Point2 Mesh::triangle_centroid(TriId t) const
{
    const auto& n = triangle(t).nodes;
    return centroid(point(n[0]), point(n[1]), point(n[2]));
}

bool same_structure(const Mesh& a, const Mesh& b)
{
    if (a.points != b.points || a.nl() != b.nl() || a.nt() != b.nt())
        return false;
    for (std::size_t i = 0; i < a.nl(); ++i) {
        const Edge& x = a.edges[i];
        const Edge& y = b.edges[i];
        if (x.a != y.a || x.b != y.b || x.left != y.left || x.right != y.right ||
            x.boundary != y.boundary)
            return false;
    }
    for (std::size_t i = 0; i < a.nt(); ++i) {
        if (a.triangles[i].nodes != b.triangles[i].nodes ||
            a.triangles[i].edges != b.triangles[i].edges)
            return false;
    }
    return true;
}

// --- MeshEditor -------------------------------------------------------------

MeshEditor::MeshEditor(Mesh& mesh)
    : mesh_(mesh)
{
    index_.reserve(mesh_.edges.size() * 2);
    for (std::size_t e = 0; e < mesh_.edges.size(); ++e)
        index_.emplace(key(mesh_.edges[e].a, mesh_.edges[e].b), static_cast<EdgeId>(e));
}

std::uint64_t MeshEditor::key(NodeId a, NodeId b)
{
    const auto lo = static_cast<std::uint32_t>(std::min(a, b));
    const auto hi = static_cast<std::uint32_t>(std::max(a, b));
    return (std::uint64_t{lo} << 32) | hi;
}

NodeId MeshEditor::add_node(Point2 p)
{
    mesh_.points.push_back(p);
    return static_cast<NodeId>(mesh_.points.size() - 1);
}

std::optional<EdgeId> MeshEditor::find_edge(NodeId a, NodeId b) const
{
    if (auto it = index_.find(key(a, b)); it != index_.end())
        return it->second;
    return std::nullopt;
}

EdgeId MeshEditor::add_edge(NodeId a, NodeId b, bool boundary, bool active)
{
    const auto id = static_cast<EdgeId>(mesh_.edges.size());
    if (!index_.emplace(key(a, b), id).second)
        throw std::logic_error("duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
    mesh_.edges.push_back(Edge{a, b, kNoTri, kNoTri, boundary, active});
    return id;
}

bool MeshEditor::side_free(NodeId a, NodeId b) const
{
    const auto e = find_edge(a, b);
    if (!e)
        return true;
    const Edge& ed = mesh_.edge(*e);
    return (ed.a == a ? ed.left : ed.right) == kNoTri;
}

void MeshEditor::link(TriId t)
{
    Triangle& tri = mesh_.triangles[static_cast<std::size_t>(t)];
    for (int i = 0; i < 3; ++i) {
        const NodeId a = tri.nodes[i];
        const NodeId b = tri.nodes[(i + 1) % 3];
        EdgeId e;
        if (auto found = find_edge(a, b))
            e = *found;
        else
            e = add_edge(a, b);
        Edge& ed = edge(e);
        TriId& slot = ed.a == a ? ed.left : ed.right;
        if (slot != kNoTri && slot != t)
            throw std::logic_error("edge " + std::to_string(e) + " already has a triangle on that side");
        slot = t;
        tri.edges[i] = e;
    }
}

TriId MeshEditor::add_triangle(NodeId n0, NodeId n1, NodeId n2)
{
    const auto t = static_cast<TriId>(mesh_.triangles.size());
    mesh_.triangles.push_back(Triangle{{n0, n1, n2}, {}});
    try {
        link(t);
    } catch (...) {
        detach_triangle(t);
        mesh_.triangles.pop_back();
        throw;
    }
    return t;
}

void MeshEditor::detach_triangle(TriId t)
{
    for (EdgeId e : mesh_.triangles[static_cast<std::size_t>(t)].edges) {
        if (e < 0 || static_cast<std::size_t>(e) >= mesh_.edges.size())
            continue;
        Edge& ed = edge(e);
        if (ed.left == t)
            ed.left = kNoTri;
        if (ed.right == t)
            ed.right = kNoTri;
    }
}

void MeshEditor::attach_triangle(TriId t, std::array<NodeId, 3> nodes)
{
    mesh_.triangles[static_cast<std::size_t>(t)].nodes = nodes;
    link(t);
}

void MeshEditor::relink_edge(EdgeId e, NodeId a, NodeId b)
{
    Edge& ed = edge(e);
    index_.erase(key(ed.a, ed.b));
    if (!index_.emplace(key(a, b), e).second)
        throw std::logic_error("relink would duplicate an edge");
    ed.a = a;
    ed.b = b;
    ed.left = kNoTri;
    ed.right = kNoTri;
}

// --- connectivity -----------------------------------------------------------

Connectivity adjacency(const Mesh& mesh, AdjacencyKind kind, std::optional<std::size_t> max_arity)
{
    Connectivity out;
    auto& rows = out.rows;
    const auto nn = mesh.nn();
    const auto nl = mesh.nl();
    const auto nt = mesh.nt();

    switch (kind) {
    case AdjacencyKind::TriPerTri:
        rows.resize(nt);
        for (std::size_t t = 0; t < nt; ++t)
            for (EdgeId e : mesh.triangles[t].edges) {
                const Edge& ed = mesh.edge(e);
                const TriId other = ed.left == static_cast<TriId>(t) ? ed.right : ed.left;
                if (other != kNoTri)
                    rows[t].push_back(other);
            }
        break;
    case AdjacencyKind::NodePerNode:
        rows.resize(nn);
        for (const Edge& ed : mesh.edges) {
            rows[static_cast<std::size_t>(ed.a)].push_back(ed.b);
            rows[static_cast<std::size_t>(ed.b)].push_back(ed.a);
        }
        break;
    case AdjacencyKind::TriPerNode:
        rows.resize(nn);
        for (std::size_t t = 0; t < nt; ++t)
            for (NodeId n : mesh.triangles[t].nodes)
                rows[static_cast<std::size_t>(n)].push_back(static_cast<std::int32_t>(t));
        break;
    case AdjacencyKind::NodePerTri:
        rows.resize(nt);
        for (std::size_t t = 0; t < nt; ++t)
            rows[t].assign(mesh.triangles[t].nodes.begin(), mesh.triangles[t].nodes.end());
        break;
    case AdjacencyKind::EdgePerNode:
        rows.resize(nn);
        for (std::size_t e = 0; e < nl; ++e) {
            rows[static_cast<std::size_t>(mesh.edges[e].a)].push_back(static_cast<std::int32_t>(e));
            rows[static_cast<std::size_t>(mesh.edges[e].b)].push_back(static_cast<std::int32_t>(e));
        }
        break;
    case AdjacencyKind::NodePerEdge:
        rows.resize(nl);
        for (std::size_t e = 0; e < nl; ++e)
            rows[e] = {mesh.edges[e].a, mesh.edges[e].b};
        break;
    case AdjacencyKind::TriPerEdge:
        rows.resize(nl);
        for (std::size_t e = 0; e < nl; ++e) {
            if (mesh.edges[e].left != kNoTri)
                rows[e].push_back(mesh.edges[e].left);
            if (mesh.edges[e].right != kNoTri)
                rows[e].push_back(mesh.edges[e].right);
        }
        break;
    case AdjacencyKind::EdgePerTri:
        rows.resize(nt);
        for (std::size_t t = 0; t < nt; ++t)
            rows[t].assign(mesh.triangles[t].edges.begin(), mesh.triangles[t].edges.end());
        break;
    }

    const bool variable = kind == AdjacencyKind::TriPerTri || kind == AdjacencyKind::NodePerNode ||
                          kind == AdjacencyKind::TriPerNode || kind == AdjacencyKind::EdgePerNode;
    out.counts.reserve(rows.size());
    for (auto& row : rows) {
        if (variable)
            std::sort(row.begin(), row.end());
        if (max_arity && row.size() > *max_arity)
            throw MeshError(DiagnosticCode::CapacityExceeded,
                            "connectivity row of " + std::to_string(row.size()) +
                                " entries exceeds capacity " + std::to_string(*max_arity));
        out.counts.push_back(static_cast<std::int32_t>(row.size()));
    }
    return out;
}

bool euler_check(const Mesh& mesh, int holes)
{
    const auto chi = static_cast<long long>(mesh.nn()) - static_cast<long long>(mesh.nl()) +
                     static_cast<long long>(mesh.nt());
    return chi == 1 - holes;
}

int count_boundary_loops(const Mesh& mesh)
{
    std::vector<NodeId> parent(mesh.nn());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](NodeId n) {
        while (parent[static_cast<std::size_t>(n)] != n) {
            auto& p = parent[static_cast<std::size_t>(n)];
            p = parent[static_cast<std::size_t>(p)];
            n = p;
        }
        return n;
    };
    std::vector<bool> touched(mesh.nn(), false);
    for (const Edge& e : mesh.edges) {
        if (!e.boundary)
            continue;
        touched[static_cast<std::size_t>(e.a)] = touched[static_cast<std::size_t>(e.b)] = true;
        parent[static_cast<std::size_t>(find(e.a))] = find(e.b);
    }
    int loops = 0;
    for (std::size_t n = 0; n < mesh.nn(); ++n)
        if (touched[n] && find(static_cast<NodeId>(n)) == static_cast<NodeId>(n))
            ++loops;
    return loops;
}

// --- validation -------------------------------------------------------------

std::string_view to_string(ViolationKind kind)
{
    switch (kind) {
    case ViolationKind::IdOutOfRange: return "IdOutOfRange";
    case ViolationKind::DegenerateEdge: return "DegenerateEdge";
    case ViolationKind::DuplicateEdge: return "DuplicateEdge";
    case ViolationKind::NonCcwTriangle: return "NonCcwTriangle";
    case ViolationKind::BackReferenceMismatch: return "BackReferenceMismatch";
    case ViolationKind::EdgeCrossing: return "EdgeCrossing";
    }
    return "Unknown";
}

std::vector<std::pair<EdgeId, EdgeId>> crossing_pairs(const Mesh& mesh, const Tolerances& tol)
{
    struct Box
    {
        double x0, x1, y0, y1;
        EdgeId e;
    };
    std::vector<Box> boxes;
    boxes.reserve(mesh.nl());
    const auto nn = static_cast<NodeId>(mesh.nn());
    for (std::size_t e = 0; e < mesh.nl(); ++e) {
        const Edge& ed = mesh.edges[e];
        if (ed.a < 0 || ed.b < 0 || ed.a >= nn || ed.b >= nn || ed.a == ed.b)
            continue;
        const Point2 p = mesh.point(ed.a);
        const Point2 q = mesh.point(ed.b);
        boxes.push_back({std::min(p.x, q.x), std::max(p.x, q.x), std::min(p.y, q.y),
                         std::max(p.y, q.y), static_cast<EdgeId>(e)});
    }
    std::sort(boxes.begin(), boxes.end(), [](const Box& l, const Box& r) {
        return l.x0 < r.x0 || (l.x0 == r.x0 && l.e < r.e);
    });

    std::vector<std::pair<EdgeId, EdgeId>> out;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const Box& bi = boxes[i];
        const Edge& ei = mesh.edge(bi.e);
        for (std::size_t j = i + 1; j < boxes.size() && boxes[j].x0 <= bi.x1; ++j) {
            const Box& bj = boxes[j];
            if (bj.y0 > bi.y1 || bj.y1 < bi.y0)
                continue;
            const Edge& ej = mesh.edge(bj.e);
            if (edge_cross(mesh.point(ei.a), mesh.point(ei.b), mesh.point(ej.a), mesh.point(ej.b), tol))
                out.emplace_back(std::min(bi.e, bj.e), std::max(bi.e, bj.e));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Violation> validate_mesh(const Mesh& mesh, const Tolerances& tol)
{
    std::vector<Violation> out;
    const auto nn = static_cast<std::int64_t>(mesh.nn());
    const auto nl = static_cast<std::int64_t>(mesh.nl());
    const auto nt = static_cast<std::int64_t>(mesh.nt());
    auto in = [](std::int64_t id, std::int64_t n) { return id >= 0 && id < n; };
    auto tri_ok = [&](TriId t) { return t == kNoTri || in(t, nt); };

    std::unordered_map<std::uint64_t, EdgeId> seen;
    std::vector<bool> edge_ok(mesh.nl(), true);
    for (std::int64_t e = 0; e < nl; ++e) {
        const Edge& ed = mesh.edges[static_cast<std::size_t>(e)];
        const std::string tag = "edge " + std::to_string(e);
        if (!in(ed.a, nn) || !in(ed.b, nn) || !tri_ok(ed.left) || !tri_ok(ed.right)) {
            out.push_back({ViolationKind::IdOutOfRange, tag});
            edge_ok[static_cast<std::size_t>(e)] = false;
            continue;
        }
        if (ed.a == ed.b) {
            out.push_back({ViolationKind::DegenerateEdge, tag});
            edge_ok[static_cast<std::size_t>(e)] = false;
            continue;
        }
        const auto lo = static_cast<std::uint64_t>(std::min(ed.a, ed.b));
        const auto hi = static_cast<std::uint64_t>(std::max(ed.a, ed.b));
        if (auto [it, fresh] = seen.emplace((lo << 32) | hi, static_cast<EdgeId>(e)); !fresh)
            out.push_back({ViolationKind::DuplicateEdge,
                           tag + " duplicates edge " + std::to_string(it->second)});
    }

    for (std::int64_t t = 0; t < nt; ++t) {
        const Triangle& tri = mesh.triangles[static_cast<std::size_t>(t)];
        const std::string tag = "triangle " + std::to_string(t);
        bool ids = true;
        for (int i = 0; i < 3; ++i)
            ids = ids && in(tri.nodes[i], nn) && in(tri.edges[i], nl);
        if (!ids) {
            out.push_back({ViolationKind::IdOutOfRange, tag});
            continue;
        }
        if (orient2d(mesh.point(tri.nodes[0]), mesh.point(tri.nodes[1]), mesh.point(tri.nodes[2]),
                     tol) != 1)
            out.push_back({ViolationKind::NonCcwTriangle, tag});
        for (int i = 0; i < 3; ++i) {
            const NodeId a = tri.nodes[i];
            const NodeId b = tri.nodes[(i + 1) % 3];
            const Edge& ed = mesh.edge(tri.edges[i]);
            const bool forward = ed.a == a && ed.b == b;
            const bool backward = ed.a == b && ed.b == a;
            if ((!forward && !backward) || (forward && ed.left != t) || (backward && ed.right != t))
                out.push_back({ViolationKind::BackReferenceMismatch,
                               tag + " side " + std::to_string(i)});
        }
    }

    for (std::int64_t e = 0; e < nl; ++e) {
        if (!edge_ok[static_cast<std::size_t>(e)])
            continue;
        const Edge& ed = mesh.edges[static_cast<std::size_t>(e)];
        for (TriId t : {ed.left, ed.right}) {
            if (t == kNoTri)
                continue;
            const auto& es = mesh.triangle(t).edges;
            if (std::find(es.begin(), es.end(), static_cast<EdgeId>(e)) == es.end())
                out.push_back({ViolationKind::BackReferenceMismatch,
                               "edge " + std::to_string(e) + " names triangle " + std::to_string(t)});
        }
    }

    for (auto [e1, e2] : crossing_pairs(mesh, tol))
        out.push_back({ViolationKind::EdgeCrossing,
                       "edges " + std::to_string(e1) + " and " + std::to_string(e2)});
    return out;
}

double total_area(const Mesh& mesh)
{
    double sum = 0.0;
    for (std::size_t t = 0; t < mesh.nt(); ++t)
        sum += mesh.triangle_area(static_cast<TriId>(t));
    return sum;
}

std::vector<bool> boundary_nodes(const Mesh& mesh)
{
    std::vector<bool> out(mesh.nn(), false);
    for (const Edge& e : mesh.edges)
        if (e.boundary)
            out[static_cast<std::size_t>(e.a)] = out[static_cast<std::size_t>(e.b)] = true;
    return out;
}

} // namespace trim
