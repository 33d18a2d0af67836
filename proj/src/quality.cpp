#include "trim/quality.hpp"

#include "trim/refine.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace trim {

std::int64_t QualityHistogram::population() const
{
    std::int64_t total = 0;
    for (auto b : bins)
        total += b;
    return total;
}

std::string_view to_string(StatKind kind)
{
    switch (kind) {
    case StatKind::NodeValence: return "node-node connectivity";
    case StatKind::TrianglesPerNode: return "triangles per node";
    case StatKind::AreaRatio: return "triangle area, % of spacing triangle";
    case StatKind::EdgeLengthRatio: return "edge length, % of spacing";
    case StatKind::AngleRatio: return "interior angle, % of 60 degrees";
    }
    return "unknown";
}

namespace {

std::size_t bin_of(double value, double width)
{
    // A small bias keeps values that land on a bin edge up to rounding in
    // the upper bin, so 90 degrees is 150 % rather than 149.999...
    const double slot = std::floor(value / width + 1e-9);
    if (!(slot >= 0.0))
        return 0;
    return slot >= static_cast<double>(kHistogramBins - 1) ? kHistogramBins - 1 : static_cast<std::size_t>(slot);
}

} // namespace

QualityHistogram stmsh(const Mesh& mesh, const SpacingField& spacing, StatKind kind, Warnings* warnings)
{
    QualityHistogram h;
    h.kind = kind;
    auto add = [&](double value) { ++h.bins[bin_of(value, h.width)]; };

    switch (kind) {
    case StatKind::NodeValence:
    case StatKind::TrianglesPerNode: {
        const auto table = adjacency(mesh, kind == StatKind::NodeValence ? AdjacencyKind::NodePerNode
                                                                         : AdjacencyKind::TriPerNode);
        for (auto c : table.counts)
            add(static_cast<double>(c));
        break;
    }
    case StatKind::AreaRatio:
        h.width = 20.0;
        for (TriId t = 0; t < static_cast<TriId>(mesh.nt()); ++t) {
            const Point2 c = mesh.triangle_centroid(t);
            add(100.0 * mesh.triangle_area(t) / spacing_triangle_area(eval_spacing(spacing, c.x, c.y)));
        }
        break;
    case StatKind::EdgeLengthRatio:
        h.width = 20.0;
        for (const Edge& e : mesh.edges) {
            const Point2 m = midpoint(mesh.point(e.a), mesh.point(e.b));
            add(100.0 * dist(mesh.point(e.a), mesh.point(e.b)) / eval_spacing(spacing, m.x, m.y));
        }
        break;
    case StatKind::AngleRatio:
        h.width = 15.0;
        for (const Triangle& t : mesh.triangles)
            for (int i = 0; i < 3; ++i) {
                const double a = angle_at(mesh.point(t.nodes[i]), mesh.point(t.nodes[(i + 1) % 3]),
                                          mesh.point(t.nodes[(i + 2) % 3]));
                add(100.0 * a / (std::numbers::pi / 3.0));
            }
        break;
    }

    if (warnings) {
        const int holes = count_boundary_loops(mesh) - 1;
        if (mesh.nt() > 0 && !euler_check(mesh, holes))
            warnings->push_back({DiagnosticCode::EulerViolation,
                                 "nn - nl + nt = " +
                                     std::to_string(static_cast<long long>(mesh.nn()) -
                                                    static_cast<long long>(mesh.nl()) +
                                                    static_cast<long long>(mesh.nt())) +
                                     ", expected " + std::to_string(1 - holes)});
    }
    return h;
}

std::string format_report(const QualityHistogram& h)
{
    const bool counts = h.kind == StatKind::NodeValence || h.kind == StatKind::TrianglesPerNode;
    std::ostringstream os;
    os << "kind " << static_cast<int>(h.kind) << ": " << to_string(h.kind) << ", total " << h.population();
    if (!counts)
        os << ", bins of " << h.width << "%";
    os << '\n';
    for (std::size_t i = 0; i < kHistogramBins; ++i) {
        const bool last = i + 1 == kHistogramBins;
        if (counts)
            os << i << (last ? "+" : "");
        else
            os << h.lower(i) << "%.." << (last ? std::string("inf") : std::to_string(static_cast<int>(h.lower(i + 1))) + "%");
        os << ": " << h.bins[i] << '\n';
    }
    return os.str();
}

} // namespace trim
