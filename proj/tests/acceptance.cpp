// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include "support.hpp"

#include "trim/afm.hpp"
#include "trim/delaunay.hpp"
#include "trim/io.hpp"
#include "trim/pipeline.hpp"
#include "trim/refine.hpp"
#include "trim/steiner.hpp"

#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

using namespace trim;

namespace {

struct Verdict
{
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

int failures = 0;

void criterion(const char* name, const std::function<Verdict()>& body)
{
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v.pass = false;
        v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass)
        ++failures;
    std::printf("%s  %-28s %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
}

const char* const kCorpus[] = {"rectangle.mg", "channel.mg", "airfoil.mg", "annulus.mg"};

double corpus_spacing(const std::string& name)
{
    if (name == "rectangle.mg")
        return 2.5;
    if (name == "channel.mg")
        return 2.0;
    if (name == "airfoil.mg")
        return 0.6;
    return 1.0;
}

double domain_area(const Domain& d)
{
    double a = 0.0;
    for (const auto& loop : d.loops)
        a += loop.signed_area;
    return a;
}

std::size_t all_pairs_crossings(const Mesh& m)
{
    std::size_t hits = 0;
    for (std::size_t i = 0; i < m.nl(); ++i)
        for (std::size_t j = i + 1; j < m.nl(); ++j) {
            const Edge& a = m.edges[i];
            const Edge& b = m.edges[j];
            hits += static_cast<std::size_t>(
                edge_cross(m.point(a.a), m.point(a.b), m.point(b.a), m.point(b.b)) != 0);
        }
    return hits;
}

struct Generated
{
    std::string label;
    Domain domain;
    DiscretizedBoundary boundary;
    MeshResult result;
};

std::vector<Generated> corpus_runs()
{
    std::vector<Generated> out;
    for (const char* name : kCorpus) {
        const Domain d = parse_mg(support::read_corpus(name));
        const UniformSpacing s{corpus_spacing(name)};
        const auto b = discretize_boundary(d, s);
        out.push_back({std::string(name) + "/delaunay", d, b, dlny_domain(b)});
        AfmOptions first;
        out.push_back({std::string(name) + "/afm-first", d, b, afm_mesh(b, s, first)});
        AfmOptions smallest;
        smallest.version = AfmVersion::SmallestEdge;
        out.push_back({std::string(name) + "/afm-smallest", d, b, afm_mesh(b, s, smallest)});
        SteinerFlags flags;
        flags.do_smoothing = true;
        out.push_back({std::string(name) + "/steiner", d, b, steiner_refine(b, s, flags)});
    }
    return out;
}

bool locally_delaunay(const Mesh& mesh)
{
    for (const Edge& ed : mesh.edges) {
        if (ed.boundary || ed.left == kNoTri || ed.right == kNoTri)
            continue;
        auto apex = [&](TriId t) {
            for (NodeId n : mesh.triangle(t).nodes)
                if (!ed.has(n))
                    return n;
            return ed.a;
        };
        const auto [c, r2] = support::circle_through(mesh.point(ed.a), mesh.point(ed.b), mesh.point(apex(ed.left)));
        if (dist2(mesh.point(apex(ed.right)), c) < r2 * (1.0 - 1e-10))
            return false;
    }
    return true;
}

double quad_max_angle(Point2 p, Point2 q, Point2 r, Point2 s)
{
    auto worst = [](Point2 u, Point2 v, Point2 w) {
        return std::max({angle_at(u, v, w), angle_at(v, w, u), angle_at(w, u, v)});
    };
    return std::max(worst(p, q, r), worst(p, r, s));
}

// Perturbed grid driven towards flat triangles: every interior edge whose
// swap raises the local max angle is swapped, for a few passes.
Mesh worsened_grid(std::uint64_t seed)
{
    Mesh m = support::perturbed_grid(8, 0.3, seed);
    MeshEditor ed(m);
    for (int pass = 0; pass < 3; ++pass)
        for (EdgeId e = 0; e < static_cast<EdgeId>(m.nl()); ++e) {
            const Edge edge = m.edge(e);
            if (edge.boundary || edge.left == kNoTri || edge.right == kNoTri)
                continue;
            auto apex = [&](TriId t) {
                for (NodeId n : m.triangle(t).nodes)
                    if (!edge.has(n))
                        return n;
                return edge.a;
            };
            const NodeId a = edge.a, b = edge.b, c = apex(edge.left), d = apex(edge.right);
            const Point2 pa = m.point(a), pb = m.point(b), pc = m.point(c), pd = m.point(d);
            if (orient2d(pd, pb, pc) != 1 || orient2d(pa, pd, pc) != 1)
                continue;
            if (quad_max_angle(pc, pa, pd, pb) <= quad_max_angle(pa, pd, pb, pc))
                continue;
            ed.detach_triangle(edge.left);
            ed.detach_triangle(edge.right);
            ed.relink_edge(e, d, c);
            ed.attach_triangle(edge.left, {d, b, c});
            ed.attach_triangle(edge.right, {a, d, c});
        }
    return m;
}

} // namespace

int main()
{
    std::printf("acceptance criteria\n");

    criterion("delaunay-empty-circle", [] {
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        std::size_t triangles = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto pts = support::random_points(seed, 200);
            const MeshResult r = dlny_points(pts);
            triangles += r.mesh.nt();
            v.require(support::empty_circle_failures(r.mesh, 1e-10) == 0,
                      "seed " + std::to_string(seed) + " has a non-empty circumcircle");
            v.require(r.mesh.nn() == 200, "nodes lost");
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        v.require(secs < 5.0, "took " + std::to_string(secs) + " s");
        if (v.pass)
            v.detail = std::to_string(triangles) + " triangles, 20 x 200 points, " + std::to_string(secs) + " s";
        return v;
    });

    const auto runs = corpus_runs();

    criterion("constrained-integrity", [&] {
        Verdict v;
        for (const auto& g : runs) {
            const Mesh& m = g.result.mesh;
            for (const Edge& e : g.boundary.mesh.edges) {
                v.require(support::has_boundary_edge(m, e.a, e.b), g.label + ": boundary edge missing");
                v.require(m.point(e.a) == g.boundary.mesh.point(e.a), g.label + ": boundary node moved");
            }
            v.require(all_pairs_crossings(m) == 0, g.label + ": crossing edges");
            v.require(euler_check(m, g.domain.holes()), g.label + ": Euler relation fails");
            v.require(validate_mesh(m).empty(), g.label + ": invalid mesh");
            v.require(g.result.warnings.empty(), g.label + ": " + (g.result.warnings.empty() ? "" : describe(g.result.warnings[0])));
        }
        if (v.pass)
            v.detail = std::to_string(runs.size()) + " runs (4 domains x delaunay/afm-first/afm-smallest/steiner)";
        return v;
    });

    criterion("area-conservation", [&] {
        Verdict v;
        double worst = 0.0;
        for (const auto& g : runs) {
            if (g.label.find("delaunay") != std::string::npos)
                continue;
            const double want = domain_area(g.domain);
            const double rel = std::abs(total_area(g.result.mesh) - want) / want;
            worst = std::max(worst, rel);
            v.require(rel <= 1e-9, g.label + ": relative area error " + std::to_string(rel));
        }
        if (v.pass) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "worst relative error %.2e", worst);
            v.detail = buf;
        }
        return v;
    });

    criterion("ideal-vertex-and-reach", [] {
        Verdict v;
        const Point2 a{0, 0}, b{2, 0};
        v.require(ideal_vertex(a, b, UniformSpacing{0.5}).delta_1 == 0.55 * 2.0, "lower clamp");
        v.require(ideal_vertex(a, b, UniformSpacing{2.2}).delta_1 == 2.2, "unclamped");
        v.require(ideal_vertex(a, b, UniformSpacing{9.0}).delta_1 == 2.0 * 2.0, "upper clamp");

        const Tolerances tol;
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        int admitted = 0, rejected = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const double delta = 0.6 + 1.5 * (u(rng) + 1.0);
            const IdealVertex iv = ideal_vertex(a, b, UniformSpacing{delta});
            const double reach = 1.5 * iv.delta_1;
            Mesh mesh;
            mesh.points = {a, b};
            for (int k = 0; k < 50; ++k) {
                const double r = iv.delta_1 * std::sqrt(0.5 * (u(rng) + 1.0));
                const double t = M_PI * u(rng);
                mesh.points.push_back(iv.p1 + Point2{r * std::cos(t), r * std::sin(t)});
            }
            std::vector<NodeId> front(mesh.nn());
            for (NodeId n = 0; n < static_cast<NodeId>(mesh.nn()); ++n)
                front[static_cast<std::size_t>(n)] = n;
            const auto cands = select_candidates(mesh, front, 0, 1, iv, tol);
            for (NodeId n = 2; n < static_cast<NodeId>(mesh.nn()); ++n) {
                const Point2 p = mesh.point(n);
                if (orient2d(a, b, p, tol) != 1)
                    continue;
                const double far = std::max(dist(p, a), dist(p, b));
                const bool listed = std::any_of(cands.begin(), cands.end(), [&](const Candidate& c) { return c.node == n; });
                if (far <= reach * (1.0 - tol.zero_strip)) {
                    v.require(listed, "node within reach was not listed");
                    admitted += listed;
                } else if (far > reach * (1.0 + tol.zero_strip)) {
                    v.require(!listed, "node beyond reach was listed");
                    rejected += !listed;
                }
            }
        }
        v.require(admitted > 100 && rejected > 100, "too few nodes near the reach limit");
        if (v.pass)
            v.detail = "3 clamp cases; " + std::to_string(admitted) + " admitted, " + std::to_string(rejected) +
                       " rejected";
        return v;
    });

    criterion("spacing-formulas", [] {
        Verdict v;
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-20.0, 20.0);
        const CircularSpacing c{0.2, 0.01, 0.1, 2.0, -3.0};
        const double alpha = 0.4;
        const StripeSpacing s{0.05, 0.8, alpha, 3.0, -1.0, 2.0};
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double x = u(rng), y = u(rng);
            const double r = std::hypot(x - 2.0, y + 3.0);
            const double want_c = 0.2 + (0.01 - 0.2) * std::exp(-0.1 * r * r);
            const double rs = std::hypot(x + 1.0, y - 2.0);
            const double beta = std::atan2(y - 2.0, x + 1.0);
            const double want_s = 0.05 + 0.8 * std::abs(rs * std::sin(beta - alpha)) / 3.0;
            worst = std::max({worst, std::abs(eval_spacing(c, x, y) - want_c), std::abs(eval_spacing(s, x, y) - want_s)});
        }
        v.require(worst <= 1e-12, "pointwise difference " + std::to_string(worst));
        v.require(std::abs(eval_spacing(c, 2.0, -3.0) - 0.01) <= 1e-12, "centre limit");
        v.require(std::abs(eval_spacing(c, 2.0 + 1e3, -3.0) - 0.2) <= 1e-12, "far-field limit");
        if (v.pass) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "1000 points, max difference %.1e", worst);
            v.detail = buf;
        }
        return v;
    });

    criterion("lawson-convergence", [] {
        Verdict v;
        std::size_t total = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Mesh m = support::perturbed_grid(5 + static_cast<int>(seed % 5), 0.38, seed);
            std::vector<double> prev = support::sorted_angles(m);
            bool increasing = true;
            total += edswap(m, SwapCriterion::DelaunayMaxMin, [&](const Mesh& cur, EdgeId) {
                auto now = support::sorted_angles(cur);
                increasing = increasing && std::lexicographical_compare(prev.begin(), prev.end(), now.begin(), now.end());
                prev = std::move(now);
            });
            v.require(increasing, "angle vector did not increase, seed " + std::to_string(seed));
            v.require(locally_delaunay(m), "edge fails incircle, seed " + std::to_string(seed));
            v.require(validate_mesh(m).empty(), "invalid mesh, seed " + std::to_string(seed));
        }
        v.require(total > 0, "no swaps happened");
        if (v.pass)
            v.detail = "20 meshes, " + std::to_string(total) + " swaps, each raised the angle vector";
        return v;
    });

    criterion("minmax-behaviour", [] {
        Verdict v;
        for (auto crit : {SwapCriterion::DelaunayMaxMin, SwapCriterion::MinMax}) {
            Mesh rect = support::build_mesh({{0, 0}, {3, 0}, {3, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
            v.require(edswap(rect, crit) == 0, "cocircular rectangle swapped");
        }
        int meshes = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            Mesh m = worsened_grid(seed);
            const double before = support::sorted_angles(m).back();
            v.require(before > 160.0 * M_PI / 180.0, "fan lacks a flat angle");
            edswap(m, SwapCriterion::MinMax);
            const double after = support::sorted_angles(m).back();
            v.require(after < before, "max angle not reduced, seed " + std::to_string(seed));
            v.require(validate_mesh(m).empty(), "invalid after MinMax");
            ++meshes;
        }
        if (v.pass)
            v.detail = "rectangle: 0 swaps; " + std::to_string(meshes) + " worsened grids reduced their max angle";
        return v;
    });

    criterion("steiner-sizing", [] {
        Verdict v;
        SteinerFlags flags;
        flags.do_smoothing = true;
        const double delta = 0.2;
        const MeshResult one = steiner_mesh(support::unit_square(), UniformSpacing{delta}, flags);
        const double limit = 1.05 * std::sqrt(3.0) / 4.0 * delta * delta;
        double largest = 0.0;
        for (TriId t = 0; t < static_cast<TriId>(one.mesh.nt()); ++t)
            largest = std::max(largest, one.mesh.triangle_area(t));
        v.require(largest <= limit, "largest area " + std::to_string(largest));
        flags.factor = 3.0;
        const MeshResult three = steiner_mesh(support::unit_square(), UniformSpacing{delta}, flags);
        v.require(three.mesh.nn() < one.mesh.nn(), "factor 3 did not reduce the node count");
        if (v.pass) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "max area %.4f <= %.4f; nodes %zu (factor 1) vs %zu (factor 3)", largest,
                          limit, one.mesh.nn(), three.mesh.nn());
            v.detail = buf;
        }
        return v;
    });

    criterion("smoothing-fixed-point", [] {
        Verdict v;
        Mesh m = support::build_mesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.3, 0.3}},
                                     {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}});
        const std::vector<Point2> before = m.points;
        smooth(m);
        v.require(dist(m.points[4], {0.5, 0.5}) <= 1e-6, "interior node off the centroid");
        for (std::size_t i = 0; i < 4; ++i)
            v.require(std::bit_cast<std::uint64_t>(m.points[i].x) == std::bit_cast<std::uint64_t>(before[i].x) &&
                          std::bit_cast<std::uint64_t>(m.points[i].y) == std::bit_cast<std::uint64_t>(before[i].y),
                      "boundary node moved");
        Mesh grid = support::perturbed_grid(10, 0.3, 3);
        const std::vector<Point2> grid_before = grid.points;
        const auto fixed = boundary_nodes(grid);
        smooth(grid);
        for (std::size_t i = 0; i < grid.nn(); ++i)
            if (fixed[i])
                v.require(std::bit_cast<std::uint64_t>(grid.points[i].x) == std::bit_cast<std::uint64_t>(grid_before[i].x) &&
                              std::bit_cast<std::uint64_t>(grid.points[i].y) == std::bit_cast<std::uint64_t>(grid_before[i].y),
                          "grid boundary node moved");
        if (v.pass) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "centroid error %.1e", dist(m.points[4], {0.5, 0.5}));
            v.detail = buf;
        }
        return v;
    });

    criterion("parser", [] {
        Verdict v;
        for (const char* name : kCorpus) {
            const Domain d = parse_mg(support::read_corpus(name));
            v.require(parse_mg(format_mg(d)) == d, std::string(name) + " did not round-trip");
        }
        std::string text = support::read_corpus("rectangle.mg");
        const auto nl = text.find('\n', text.find('\n', text.find('\n') + 1) + 1);
        text[text.find(' ', nl)] = '\t';
        try {
            parse_mg(text);
            v.require(false, "tab accepted");
        } catch (const MeshError& e) {
            v.require(e.line() == 4, "tab reported on the wrong line");
        }
        try {
            support::polygon_domain({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
            v.require(false, "clockwise outer loop accepted");
        } catch (const MeshError& e) {
            v.require(e.code() == DiagnosticCode::OrientationError, "wrong error for clockwise loop");
        }
        try {
            const Domain ann = parse_mg(support::read_corpus("annulus.mg"));
            auto segs = ann.segments;
            for (std::size_t i = 2; i < 4; ++i)
                std::reverse(segs[i].points.begin(), segs[i].points.end());
            std::swap(segs[2].next, segs[3].next);
            segs[2].next = 4;
            segs[3].next = 3;
            make_domain(segs);
            v.require(false, "counter-clockwise hole accepted");
        } catch (const MeshError& e) {
            v.require(e.code() == DiagnosticCode::OrientationError, "wrong error for reversed hole");
        }
        if (v.pass)
            v.detail = "4 files round-trip; tab at line 4 rejected; both orientation faults rejected";
        return v;
    });

    criterion("determinism", [] {
        Verdict v;
        for (Method method : {Method::Delaunay, Method::Afm, Method::Steiner}) {
            MeshParams p;
            p.method = method;
            p.spacing = CircularSpacing{1.5, 0.4, 0.05, 10.0, 5.0};
            p.smoothing = method != Method::Delaunay;
            const std::string mg = support::read_corpus("airfoil.mg");
            const MeshRun a = run_mesh(mg, p);
            const MeshRun b = run_mesh(mg, p);
            v.require(export_json(a.mesh) == export_json(b.mesh), std::string(to_string(method)) + ": JSON differs");
            v.require(render_svg(a.mesh) == render_svg(b.mesh), std::string(to_string(method)) + ": SVG differs");
        }
        if (v.pass)
            v.detail = "delaunay, afm, steiner: JSON and SVG identical across runs";
        return v;
    });

    std::printf("%s: %d failing\n", failures == 0 ? "all criteria met" : "criteria not met", failures);
    return failures == 0 ? 0 : 1;
}
