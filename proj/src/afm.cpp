#include "trim/afm.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>

namespace trim {

IdealVertex ideal_vertex(Point2 a, Point2 b, const SpacingField& spacing, int max_iterations)
{
    const double base = dist(a, b);
    const Point2 mid = midpoint(a, b);
    const Point2 normal{-(b.y - a.y) / base, (b.x - a.x) / base};
    constexpr double kHeight = 0.86602540378443864676; // sqrt(3) / 2

    IdealVertex iv;
    iv.converged = false;
    double height = kHeight * base;
    double delta = base;
    for (int it = 0; it < max_iterations; ++it) {
        const Point2 c = mid + (height / 3.0) * normal;
        delta = eval_spacing(spacing, c.x, c.y);
        const double next = kHeight * delta;
        const bool close = std::abs(next - height) <= 0.01 * height;
        height = next;
        if (close) {
            iv.converged = true;
            break;
        }
    }
    iv.delta_m = delta;
    iv.delta_1 = std::clamp(delta, kMinLegRatio * base, kMaxLegRatio * base);
    iv.p1 = mid + std::sqrt(iv.delta_1 * iv.delta_1 - 0.25 * base * base) * normal;
    return iv;
}

std::vector<Candidate> select_candidates(const Mesh& mesh, std::span<const NodeId> front_nodes,
                                         NodeId n1, NodeId n2, const IdealVertex& iv,
                                         const Tolerances& tol)
{
    const Point2 a = mesh.point(n1);
    const Point2 b = mesh.point(n2);
    const double slack = 1.0 + tol.zero_strip;
    const double reach = kCandidateReach * iv.delta_1 * slack;
    const double radius = iv.delta_1 * slack;

    struct Ranked
    {
        double d;
        NodeId n;
    };
    std::vector<Ranked> ranked;
    for (NodeId n : front_nodes) {
        if (n == n1 || n == n2)
            continue;
        const Point2 p = mesh.point(n);
        if (dist(p, iv.p1) > radius || orient2d(a, b, p, tol) != 1)
            continue;
        if (dist(p, a) > reach || dist(p, b) > reach)
            continue;
        ranked.push_back({segment_distance(p, a, b), n});
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const Ranked& l, const Ranked& r) { return l.d < r.d || (l.d == r.d && l.n < r.n); });

    std::vector<Candidate> out;
    out.reserve(ranked.size() + 1);
    for (const auto& r : ranked)
        out.push_back({r.n, mesh.point(r.n)});
    out.push_back({std::nullopt, iv.p1});
    return out;
}

namespace {

class AdvancingFront
{
public:
    AdvancingFront(Mesh& mesh, const SpacingField& spacing, const AfmOptions& options, Warnings& warnings)
        : mesh_(mesh)
        , ed_(mesh)
        , spacing_(spacing)
        , opt_(options)
        , warnings_(warnings)
    {
        slot_.assign(mesh_.nl(), -1);
        retained_flag_.assign(mesh_.nl(), false);
        for (std::size_t e = 0; e < mesh_.nl(); ++e) {
            mesh_.edges[e].active = true;
            activate(static_cast<EdgeId>(e));
        }
    }

    void run()
    {
        bool progress = false;
        while (!active_.empty()) {
            if (mesh_.nt() >= opt_.max_triangles) {
                warnings_.push_back({DiagnosticCode::Stalled, "triangle limit reached"});
                break;
            }
            const auto e = next_base();
            if (!e) {
                if (retained_.empty())
                    break;
                if (progress) {
                    requeue_all();
                    progress = false;
                    continue;
                }
                if (!fallback()) {
                    warnings_.push_back({DiagnosticCode::Stalled,
                                         std::to_string(active_.size()) +
                                             " front edges could not be closed"});
                    break;
                }
                continue;
            }
            if (try_base(*e)) {
                progress = true;
            } else {
                retained_flag_[static_cast<std::size_t>(*e)] = true;
                retained_.push_back(*e);
                if (opt_.cross_stack_cap && retained_.size() > *opt_.cross_stack_cap)
                    throw MeshError(DiagnosticCode::CrossStackOverflow,
                                    "edge-cross stack exceeds " + std::to_string(*opt_.cross_stack_cap));
            }
        }
        for (Edge& edge : mesh_.edges)
            edge.active = false;
    }

private:
    // --- front bookkeeping ----------------------------------------------

    void activate(EdgeId e)
    {
        if (static_cast<std::size_t>(e) >= slot_.size()) {
            slot_.resize(static_cast<std::size_t>(e) + 1, -1);
            retained_flag_.resize(static_cast<std::size_t>(e) + 1, false);
        }
        slot_[static_cast<std::size_t>(e)] = static_cast<std::ptrdiff_t>(active_.size());
        active_.push_back(e);
        enqueue(e);
    }

    void deactivate(EdgeId e)
    {
        const auto s = slot_[static_cast<std::size_t>(e)];
        if (s < 0)
            return;
        const EdgeId last = active_.back();
        active_[static_cast<std::size_t>(s)] = last;
        slot_[static_cast<std::size_t>(last)] = s;
        active_.pop_back();
        slot_[static_cast<std::size_t>(e)] = -1;
        if (retained_flag_[static_cast<std::size_t>(e)]) {
            retained_flag_[static_cast<std::size_t>(e)] = false;
            std::erase(retained_, e);
        }
    }

    bool is_active(EdgeId e) const { return slot_[static_cast<std::size_t>(e)] >= 0; }

    void enqueue(EdgeId e)
    {
        if (opt_.version == AfmVersion::FirstActiveEdge)
            fifo_.push_back(e);
        else
            heap_.push({dist(mesh_.point(mesh_.edge(e).a), mesh_.point(mesh_.edge(e).b)), e});
    }

    std::optional<EdgeId> next_base()
    {
        auto usable = [&](EdgeId e) { return is_active(e) && !retained_flag_[static_cast<std::size_t>(e)]; };
        if (opt_.version == AfmVersion::FirstActiveEdge) {
            while (!fifo_.empty()) {
                const EdgeId e = fifo_.front();
                fifo_.pop_front();
                if (usable(e))
                    return e;
            }
        } else {
            while (!heap_.empty()) {
                const EdgeId e = heap_.top().second;
                heap_.pop();
                if (usable(e))
                    return e;
            }
        }
        return std::nullopt;
    }

    void release(EdgeId e)
    {
        retained_flag_[static_cast<std::size_t>(e)] = false;
        enqueue(e);
    }

    void requeue_all()
    {
        for (EdgeId e : retained_)
            release(e);
        retained_.clear();
    }

    void requeue_near(std::initializer_list<NodeId> nodes)
    {
        std::vector<EdgeId> keep;
        for (EdgeId e : retained_) {
            const Edge& edge = mesh_.edge(e);
            bool touched = false;
            for (NodeId n : nodes)
                touched = touched || edge.has(n);
            if (touched)
                release(e);
            else
                keep.push_back(e);
        }
        retained_.swap(keep);
    }

    std::vector<NodeId> front_nodes()
    {
        stamp_.resize(mesh_.nn(), 0);
        ++epoch_;
        std::vector<NodeId> out;
        for (EdgeId e : active_)
            for (NodeId n : {mesh_.edge(e).a, mesh_.edge(e).b})
                if (stamp_[static_cast<std::size_t>(n)] != epoch_) {
                    stamp_[static_cast<std::size_t>(n)] = epoch_;
                    out.push_back(n);
                }
        return out;
    }

    // --- validity ---------------------------------------------------------

    /// Side p->q of a new triangle: either absent, or an active front edge
    /// stored in that direction (its free side faces the triangle).
    bool side_usable(NodeId p, NodeId q) const
    {
        const auto e = ed_.find_edge(p, q);
        if (!e)
            return true;
        return is_active(*e) && mesh_.edge(*e).a == p;
    }

    bool crosses_front(Point2 p, Point2 q) const
    {
        for (EdgeId e : active_) {
            const Edge& edge = mesh_.edge(e);
            if (edge_cross(p, q, mesh_.point(edge.a), mesh_.point(edge.b), opt_.tol))
                return true;
        }
        return false;
    }

    bool valid(NodeId a, NodeId b, std::optional<NodeId> k, Point2 pk,
               const std::vector<NodeId>& fronts) const
    {
        const Point2 pa = mesh_.point(a);
        const Point2 pb = mesh_.point(b);
        if (orient2d(pa, pb, pk, opt_.tol) != 1)
            return false;
        if (k) {
            if (!side_usable(b, *k) || !side_usable(*k, a))
                return false;
            if (!ed_.find_edge(b, *k) && crosses_front(pb, pk))
                return false;
            if (!ed_.find_edge(*k, a) && crosses_front(pk, pa))
                return false;
        } else if (crosses_front(pb, pk) || crosses_front(pk, pa)) {
            return false;
        }
        for (NodeId j : fronts) {
            if (j == a || j == b || (k && j == *k))
                continue;
            const Point2 pj = mesh_.point(j);
            if (orient2d(pa, pb, pj, opt_.tol) >= 0 && orient2d(pb, pk, pj, opt_.tol) >= 0 &&
                orient2d(pk, pa, pj, opt_.tol) >= 0)
                return false;
        }
        return true;
    }

    // --- triangle generation ----------------------------------------------

    void accept(EdgeId base, std::optional<NodeId> k, Point2 pk)
    {
        const NodeId a = mesh_.edge(base).a;
        const NodeId b = mesh_.edge(base).b;
        const NodeId apex = k ? *k : ed_.add_node(pk);
        std::vector<EdgeId> fresh;
        if (!ed_.find_edge(a, apex))
            fresh.push_back(ed_.add_edge(a, apex));
        if (!ed_.find_edge(apex, b))
            fresh.push_back(ed_.add_edge(apex, b));
        const TriId t = ed_.add_triangle(a, b, apex);
        for (EdgeId e : mesh_.triangle(t).edges) {
            Edge& edge = ed_.edge(e);
            edge.active = edge.left == kNoTri;
            if (!edge.active)
                deactivate(e);
        }
        for (EdgeId e : fresh)
            activate(e);
        requeue_near({a, b, apex});
        if (opt_.observer)
            opt_.observer(mesh_, t);
    }

    bool try_base(EdgeId e)
    {
        const NodeId a = mesh_.edge(e).a;
        const NodeId b = mesh_.edge(e).b;
        const IdealVertex iv = ideal_vertex(mesh_.point(a), mesh_.point(b), spacing_);
        if (!iv.converged && !warned_convergence_) {
            warned_convergence_ = true;
            warnings_.push_back({DiagnosticCode::NonConvergence,
                                 "spacing triangle iteration did not settle within 100 steps"});
        }
        const auto fronts = front_nodes();
        auto cands = select_candidates(mesh_, fronts, a, b, iv, opt_.tol);
        const bool snapped = std::any_of(cands.begin(), cands.end() - 1, [&](const Candidate& c) {
            return dist(c.position, iv.p1) < kSnapRatio * iv.delta_1;
        });
        if (snapped)
            cands.pop_back();
        if (opt_.near_list_cap && cands.size() > *opt_.near_list_cap)
            throw MeshError(DiagnosticCode::NearListOverflow,
                            "near-node list exceeds " + std::to_string(*opt_.near_list_cap));
        for (const Candidate& c : cands)
            if (valid(a, b, c.node, c.position, fronts)) {
                accept(e, c.node, c.position);
                return true;
            }
        return false;
    }

    /// Last resort for retained edges: the constrained-Delaunay choice among
    /// front nodes, which always exists for a closed front.
    bool fallback()
    {
        const auto fronts = front_nodes();
        for (EdgeId e : std::vector<EdgeId>(retained_)) {
            const NodeId a = mesh_.edge(e).a;
            const NodeId b = mesh_.edge(e).b;
            const Point2 pa = mesh_.point(a);
            const Point2 pb = mesh_.point(b);
            const double base = dist(pa, pb);
            const Point2 mid = midpoint(pa, pb);
            const Point2 normal{-(pb.y - pa.y) / base, (pb.x - pa.x) / base};
            std::optional<NodeId> best;
            double best_t = std::numeric_limits<double>::infinity();
            for (NodeId k : fronts) {
                if (k == a || k == b || orient2d(pa, pb, mesh_.point(k), opt_.tol) != 1)
                    continue;
                const Circumcircle cc = circumcircle(pa, pb, mesh_.point(k), opt_.tol);
                const double t = dot(cc.center - mid, normal);
                if (t < best_t && valid(a, b, k, mesh_.point(k), fronts)) {
                    best = k;
                    best_t = t;
                }
            }
            if (best) {
                std::erase(retained_, e);
                retained_flag_[static_cast<std::size_t>(e)] = false;
                accept(e, best, mesh_.point(*best));
                return true;
            }
        }
        return false;
    }

    Mesh& mesh_;
    MeshEditor ed_;
    const SpacingField& spacing_;
    const AfmOptions& opt_;
    Warnings& warnings_;

    std::vector<EdgeId> active_;
    std::vector<std::ptrdiff_t> slot_;
    std::vector<bool> retained_flag_;
    std::vector<EdgeId> retained_;
    std::deque<EdgeId> fifo_;
    std::priority_queue<std::pair<double, EdgeId>, std::vector<std::pair<double, EdgeId>>, std::greater<>>
        heap_;
    std::vector<unsigned> stamp_;
    unsigned epoch_ = 0;
    bool warned_convergence_ = false;
};

} // namespace

MeshResult afm_mesh(const DiscretizedBoundary& boundary, const SpacingField& spacing,
                    const AfmOptions& options)
{
    validate_spacing(spacing);
    if (boundary.mesh.nl() < 3)
        throw MeshError(DiagnosticCode::InputTooSmall, "boundary needs at least 3 edges");
    MeshResult out;
    out.mesh = boundary.mesh;
    out.mesh.triangles.clear();
    for (Edge& e : out.mesh.edges)
        e.left = e.right = kNoTri;
    AdvancingFront front(out.mesh, spacing, options, out.warnings);
    front.run();
    return out;
}

} // namespace trim
