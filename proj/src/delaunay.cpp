#include "trim/delaunay.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace trim {

namespace {

/// Front-based Delaunay construction. Every active edge a->b has its
/// untriangulated side on the left; processing it selects the third node
/// whose circumcircle with a, b contains no other visible node.
class FrontDelaunay
{
public:
    FrontDelaunay(Mesh& mesh, bool hull_mode, const DlnyOptions& options)
        : mesh_(mesh)
        , ed_(mesh)
        , hull_mode_(hull_mode)
        , opt_(options)
    {}

    void push(EdgeId e) { stack_.push_back(e); }

    EdgeId seed(NodeId a, NodeId b)
    {
        const EdgeId e = ed_.add_edge(a, b, true, true);
        push(e);
        return e;
    }

    void run(Warnings& warnings)
    {
        std::size_t unresolved = 0;
        while (!stack_.empty()) {
            const EdgeId e = stack_.front();
            stack_.pop_front();
            Edge& edge = ed_.edge(e);
            if (!edge.active || edge.left != kNoTri)
                continue;
            const auto k = select(edge.a, edge.b);
            if (!k) {
                ed_.edge(e).active = false;
                if (hull_mode_)
                    ed_.edge(e).boundary = true;
                else
                    ++unresolved;
                continue;
            }
            accept(e, *k);
            if (opt_.max_edges && mesh_.nl() > *opt_.max_edges)
                throw MeshError(DiagnosticCode::InputTooSmall,
                                "edge budget of " + std::to_string(*opt_.max_edges) + " exceeded");
        }
        for (Edge& edge : mesh_.edges)
            edge.active = false;
        if (unresolved > 0)
            warnings.push_back({DiagnosticCode::CheckMeshWarning,
                                std::to_string(unresolved) + " front edges found no Delaunay node"});
    }

private:
    bool left_of(NodeId a, NodeId b, NodeId k) const
    {
        return orient2d(mesh_.point(a), mesh_.point(b), mesh_.point(k), opt_.tol) == 1;
    }

    bool segment_clear(NodeId p, NodeId q) const
    {
        if (ed_.find_edge(p, q))
            return true;
        const Point2 pp = mesh_.point(p);
        const Point2 pq = mesh_.point(q);
        for (const Edge& e : mesh_.edges)
            if (edge_cross(pp, pq, mesh_.point(e.a), mesh_.point(e.b), opt_.tol))
                return false;
        return true;
    }

    /// Triangle (a, b, k) can be attached: both new sides are free on the
    /// triangle's side and cross no existing edge.
    bool visible(NodeId a, NodeId b, NodeId k) const
    {
        return ed_.side_free(b, k) && ed_.side_free(k, a) && segment_clear(b, k) && segment_clear(k, a);
    }

    std::optional<NodeId> select(NodeId a, NodeId b) const
    {
        const Point2 pa = mesh_.point(a);
        const Point2 pb = mesh_.point(b);
        const Point2 mid = midpoint(pa, pb);

        std::vector<NodeId> left;
        for (NodeId n = 0; n < static_cast<NodeId>(mesh_.nn()); ++n)
            if (n != a && n != b && left_of(a, b, n))
                left.push_back(n);
        std::stable_sort(left.begin(), left.end(), [&](NodeId l, NodeId r) {
            return dist2(mesh_.point(l), mid) < dist2(mesh_.point(r), mid);
        });

        std::optional<NodeId> k;
        for (NodeId n : left)
            if (visible(a, b, n)) {
                k = n;
                break;
            }
        if (!k)
            return std::nullopt;

        // Each replacement shrinks the circumcircle's cap left of a->b, so the
        // loop ends after at most |left| steps.
        std::sort(left.begin(), left.end());
        for (std::size_t iter = 0; iter <= left.size(); ++iter) {
            const Circumcircle cc = circumcircle(pa, pb, mesh_.point(*k), opt_.tol);
            std::optional<NodeId> inner;
            for (NodeId j : left) {
                if (j == *k)
                    continue;
                const double diff = dist2(mesh_.point(j), cc.center) - cc.r2;
                if (diff < -opt_.tol.incircle_eps * cc.r2 && visible(a, b, j)) {
                    inner = j;
                    break;
                }
            }
            if (!inner)
                break;
            k = inner;
        }
        return k;
    }

    void accept(EdgeId base, NodeId k)
    {
        const NodeId a = mesh_.edge(base).a;
        const NodeId b = mesh_.edge(base).b;
        if (!ed_.find_edge(a, k))
            push(ed_.add_edge(a, k, false, true));
        if (!ed_.find_edge(k, b))
            push(ed_.add_edge(k, b, false, true));
        const TriId t = ed_.add_triangle(a, b, k);
        for (EdgeId e : mesh_.triangle(t).edges) {
            Edge& edge = ed_.edge(e);
            edge.active = edge.left == kNoTri;
        }
    }

    Mesh& mesh_;
    MeshEditor ed_;
    bool hull_mode_;
    DlnyOptions opt_;
    std::deque<EdgeId> stack_;
};

void check_finite(std::span<const Point2> points)
{
    for (Point2 p : points)
        if (!is_finite(p))
            throw MeshError(DiagnosticCode::InputTooSmall, "non-finite node coordinate");
}

} // namespace

MeshResult dlny_points(std::span<const Point2> points, const DlnyOptions& options)
{
    if (points.size() < 3)
        throw MeshError(DiagnosticCode::InputTooSmall, "at least 3 nodes are needed");
    check_finite(points);
    {
        std::vector<Point2> sorted(points.begin(), points.end());
        std::sort(sorted.begin(), sorted.end(),
                  [](Point2 l, Point2 r) { return l.x < r.x || (l.x == r.x && l.y < r.y); });
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw MeshError(DiagnosticCode::InputTooSmall, "coincident nodes");
    }

    const NodeId n1 = fnode(points);
    const NodeId n2 = snode(points, n1);
    bool collinear = true;
    for (Point2 p : points)
        if (orient2d(points[static_cast<std::size_t>(n1)], points[static_cast<std::size_t>(n2)], p,
                     options.tol) != 0) {
            collinear = false;
            break;
        }
    if (collinear)
        throw MeshError(DiagnosticCode::AllCollinear, "all nodes are collinear");

    MeshResult out;
    out.mesh.points.assign(points.begin(), points.end());
    FrontDelaunay front(out.mesh, true, options);
    front.seed(n1, n2);
    front.run(out.warnings);
    return out;
}

MeshResult dlny_domain(const DiscretizedBoundary& boundary, std::span<const Point2> free_nodes,
                       const DlnyOptions& options)
{
    if (boundary.mesh.nn() < 3 || boundary.mesh.nl() < 3)
        throw MeshError(DiagnosticCode::InputTooSmall, "boundary needs at least 3 nodes and edges");
    check_finite(free_nodes);
    for (std::size_t i = 0; i < free_nodes.size(); ++i)
        if (!strictly_inside(boundary, free_nodes[i], options.tol))
            throw MeshError(DiagnosticCode::FreeNodeOutsideDomain,
                            "free node " + std::to_string(i) + " is not strictly inside the domain");

    MeshResult out;
    out.mesh = boundary.mesh;
    out.mesh.triangles.clear();
    for (Edge& e : out.mesh.edges) {
        e.left = e.right = kNoTri;
        e.active = true;
    }
    out.mesh.points.insert(out.mesh.points.end(), free_nodes.begin(), free_nodes.end());

    FrontDelaunay front(out.mesh, false, options);
    for (std::size_t e = 0; e < out.mesh.nl(); ++e)
        front.push(static_cast<EdgeId>(e));
    front.run(out.warnings);
    return out;
}

} // namespace trim
