#include "trim/refine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace trim {

namespace {

void check_counts(const Mesh& mesh)
{
    const auto nn = static_cast<NodeId>(mesh.nn());
    const auto nl = static_cast<EdgeId>(mesh.nl());
    for (const Triangle& t : mesh.triangles) {
        for (NodeId n : t.nodes)
            if (n < 0 || n >= nn)
                throw MeshError(DiagnosticCode::BadCounts, "triangle refers to node " + std::to_string(n));
        for (EdgeId e : t.edges)
            if (e < 0 || e >= nl)
                throw MeshError(DiagnosticCode::BadCounts, "triangle refers to edge " + std::to_string(e));
    }
}

/// Quad around interior edge a->b: c is the apex of the left triangle and d
/// of the right one, so a, d, b, c runs counter-clockwise.
struct Quad
{
    NodeId a, b, c, d;
    TriId left, right;
};

NodeId apex(const Triangle& t, NodeId a, NodeId b)
{
    for (NodeId n : t.nodes)
        if (n != a && n != b)
            return n;
    return a;
}

std::optional<Quad> quad_of(const Mesh& mesh, EdgeId e)
{
    const Edge& ed = mesh.edge(e);
    if (ed.boundary || ed.left == kNoTri || ed.right == kNoTri)
        return std::nullopt;
    return Quad{ed.a, ed.b, apex(mesh.triangle(ed.left), ed.a, ed.b),
                apex(mesh.triangle(ed.right), ed.a, ed.b), ed.left, ed.right};
}

double max_angle(Point2 p, Point2 q, Point2 r)
{
    return std::max({angle_at(p, q, r), angle_at(q, r, p), angle_at(r, p, q)});
}

} // namespace

double spacing_triangle_area(double delta)
{
    return std::numbers::sqrt3 / 4.0 * delta * delta;
}

std::size_t nodins(Mesh& mesh, const SpacingField& spacing, double factor, InsertMode mode,
                   std::optional<std::size_t> cap, Warnings* warnings)
{
    if (!(factor >= 1.0 && factor <= 3.0))
        throw MeshError(DiagnosticCode::InvalidParameter, "factor must lie in [1, 3]");
    if (mode != InsertMode::Centroid)
        throw MeshError(DiagnosticCode::NotImplemented, "only centroid insertion is available");
    check_counts(mesh);

    MeshEditor ed(mesh);
    const auto existing = static_cast<TriId>(mesh.nt());
    std::size_t inserted = 0;
    for (TriId t = 0; t < existing; ++t) {
        const auto [n0, n1, n2] = mesh.triangle(t).nodes;
        const Point2 c = centroid(mesh.point(n0), mesh.point(n1), mesh.point(n2));
        const double limit = factor * spacing_triangle_area(eval_spacing(spacing, c.x, c.y));
        if (mesh.triangle_area(t) <= limit)
            continue;
        if (cap && inserted >= *cap) {
            if (warnings)
                warnings->push_back({DiagnosticCode::InsertSpaceExhausted,
                                     "no space left to insert node (cap " + std::to_string(*cap) + ")"});
            break;
        }
        const NodeId k = ed.add_node(c);
        ed.detach_triangle(t);
        ed.attach_triangle(t, {n0, n1, k});
        ed.add_triangle(n1, n2, k);
        ed.add_triangle(n2, n0, k);
        ++inserted;
    }
    return inserted;
}

bool should_swap(const Mesh& mesh, EdgeId e, SwapCriterion criterion)
{
    const auto q = quad_of(mesh, e);
    if (!q)
        return false;
    const Point2 a = mesh.point(q->a);
    const Point2 b = mesh.point(q->b);
    const Point2 c = mesh.point(q->c);
    const Point2 d = mesh.point(q->d);
    if (orient2d(d, b, c) != 1 || orient2d(a, d, c) != 1)
        return false;
    if (criterion == SwapCriterion::DelaunayMaxMin)
        return angle_at(c, a, b) + angle_at(d, b, a) > std::numbers::pi + kSwapAngleMargin;
    const double before = std::max(max_angle(a, b, c), max_angle(b, a, d));
    const double after = std::max(max_angle(d, b, c), max_angle(a, d, c));
    return after < before - kSwapAngleMargin;
}

std::size_t edswap(Mesh& mesh, SwapCriterion criterion, const SwapObserver& on_swap)
{
    check_counts(mesh);
    MeshEditor ed(mesh);
    std::size_t swaps = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.nl()); ++e) {
            if (!should_swap(mesh, e, criterion))
                continue;
            const Quad q = *quad_of(mesh, e);
            ed.detach_triangle(q.left);
            ed.detach_triangle(q.right);
            ed.relink_edge(e, q.d, q.c);
            ed.attach_triangle(q.left, {q.d, q.b, q.c});
            ed.attach_triangle(q.right, {q.a, q.d, q.c});
            ++swaps;
            changed = true;
            if (on_swap)
                on_swap(mesh, e);
        }
    }
    return swaps;
}

SmoothOutcome smooth(Mesh& mesh, int max_sweeps, double tol_fraction, Warnings* warnings)
{
    check_counts(mesh);
    SmoothOutcome out;
    const auto fixed = boundary_nodes(mesh);
    std::vector<NodeId> free_nodes;
    for (NodeId n = 0; n < static_cast<NodeId>(mesh.nn()); ++n)
        if (!fixed[static_cast<std::size_t>(n)])
            free_nodes.push_back(n);
    if (free_nodes.empty()) {
        if (warnings)
            warnings->push_back({DiagnosticCode::NoFreeNodes, "no free nodes"});
        out.converged = true;
        return out;
    }

    double avdist = 0.0;
    for (const Edge& e : mesh.edges)
        avdist += dist2(mesh.point(e.a), mesh.point(e.b));
    avdist /= static_cast<double>(std::max<std::size_t>(mesh.nl(), 1));
    const double tol = tol_fraction * std::sqrt(avdist);

    const Connectivity nbrs = adjacency(mesh, AdjacencyKind::NodePerNode);
    const Connectivity tris = adjacency(mesh, AdjacencyKind::TriPerNode);
    std::vector<Point2> previous;
    std::vector<bool> withheld(mesh.nn());

    auto inverted = [&](TriId t) {
        const auto& n = mesh.triangle(t).nodes;
        return orient2d(mesh.point(n[0]), mesh.point(n[1]), mesh.point(n[2])) != 1;
    };

    for (out.sweeps = 0; out.sweeps < max_sweeps;) {
        previous = mesh.points;
        for (NodeId n : free_nodes) {
            const auto& row = nbrs.rows[static_cast<std::size_t>(n)];
            if (row.empty())
                continue;
            Point2 sum{0.0, 0.0};
            for (NodeId m : row)
                sum = sum + previous[static_cast<std::size_t>(m)];
            mesh.points[static_cast<std::size_t>(n)] = (1.0 / static_cast<double>(row.size())) * sum;
        }

        // Withhold moves around inverted triangles until none remain; with
        // every node back at its previous position the mesh is valid again.
        std::fill(withheld.begin(), withheld.end(), false);
        for (bool again = true; again;) {
            again = false;
            for (NodeId n : free_nodes)
                for (TriId t : tris.rows[static_cast<std::size_t>(n)])
                    if (inverted(t))
                        for (NodeId m : mesh.triangle(t).nodes)
                            if (!fixed[static_cast<std::size_t>(m)] && !withheld[static_cast<std::size_t>(m)]) {
                                withheld[static_cast<std::size_t>(m)] = true;
                                mesh.points[static_cast<std::size_t>(m)] = previous[static_cast<std::size_t>(m)];
                                again = true;
                            }
        }

        out.max_displacement = 0.0;
        for (NodeId n : free_nodes)
            out.max_displacement = std::max(
                out.max_displacement, dist(previous[static_cast<std::size_t>(n)], mesh.point(n)));
        ++out.sweeps;
        if (out.max_displacement < tol) {
            out.converged = true;
            break;
        }
    }
    if (!out.converged && warnings)
        warnings->push_back({DiagnosticCode::NonConvergence,
                             "smoothing did not converge in " + std::to_string(max_sweeps) + " sweeps"});
    return out;
}

} // namespace trim
