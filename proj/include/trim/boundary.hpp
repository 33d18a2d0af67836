#pragma once

#include "trim/diagnostics.hpp"
#include "trim/geometry.hpp"
#include "trim/mesh.hpp"
#include "trim/spacing.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trim {

/// One oriented polyline of the domain boundary. `next` is the id of the
/// segment that continues the loop from this segment's last point.
struct BoundarySegment
{
    int id = 0;
    std::vector<Point2> points;
    int next = 0;

    friend bool operator==(const BoundarySegment&, const BoundarySegment&) = default;
};

struct BoundaryLoop
{
    /// Indices into Domain::segments, in traversal order.
    std::vector<std::size_t> segments;
    double signed_area = 0.0;

    friend bool operator==(const BoundaryLoop&, const BoundaryLoop&) = default;
};

/// A closed region: one counter-clockwise outer loop and any number of
/// clockwise inner loops, so the region is always left of the boundary.
struct Domain
{
    std::vector<BoundarySegment> segments;
    std::vector<BoundaryLoop> loops;
    std::size_t outer_loop = 0;

    int holes() const { return static_cast<int>(loops.size()) - 1; }

    friend bool operator==(const Domain&, const Domain&) = default;
};

/// Links segments into loops and checks continuity and orientation.
/// Throws ParseError for broken linkage and OrientationError for loops that
/// violate the region-on-the-left rule.
Domain make_domain(std::vector<BoundarySegment> segments, const Tolerances& tol = {});

/// Parses the SEGMENT ... ENDRC record of a `.mg` file. Records following
/// the SEGMENT record are skipped; a warning is appended for each.
Domain parse_mg(std::string_view text, Warnings* warnings = nullptr);

std::string format_mg(const Domain& domain);

/// Natural cubic spline through `points` (chord-length parameterised),
/// sampled with the local spacing. The first and last samples are the
/// segment endpoints.
std::vector<Point2> spline_sample(std::span<const Point2> points, const SpacingField& spacing,
                                  const Tolerances& tol = {},
                                  std::size_t max_nodes = 1'000'000);

/// Straight-line marching between consecutive describing nodes; every
/// describing node is kept.
std::vector<Point2> polyline_sample(std::span<const Point2> points, const SpacingField& spacing,
                                    const Tolerances& tol = {},
                                    std::size_t max_nodes = 1'000'000);

/// Node positions (arc-length coordinates in [0, total]) for marching a
/// curve with the local spacing. The trailing partial step is absorbed by
/// rescaling every interval uniformly.
std::vector<double> march_positions(double total, const std::function<Point2(double)>& at,
                                    const SpacingField& spacing, std::size_t max_nodes);

struct DiscretizedBoundary
{
    /// Boundary nodes and active boundary edges only.
    Mesh mesh;
    /// Nodes placed on each segment (endpoints included), indexed like
    /// Domain::segments.
    std::vector<int> mb;
    /// Node ids of each loop, in traversal order.
    std::vector<std::vector<NodeId>> loops;
    int holes = 0;
};

struct DiscretizeOptions
{
    bool use_spline = false;
    /// Total node budget; exceeding it is NodeBudgetExceeded.
    std::optional<std::size_t> node_cap;
    /// Per-segment budget; exceeding it is SegmentOverflow.
    std::size_t max_segment_nodes = 1'000'000;
};

DiscretizedBoundary discretize_boundary(const Domain& domain, const SpacingField& spacing,
                                        const DiscretizeOptions& options = {},
                                        const Tolerances& tol = {});

/// Winding-number test against the discretized loops. Points within the
/// zero strip of a boundary edge are reported as outside.
bool strictly_inside(const DiscretizedBoundary& boundary, Point2 p, const Tolerances& tol = {});

/// Index of the lowest node (smallest y, ties by index).
NodeId fnode(std::span<const Point2> points);

/// Node other than n1 whose direction from n1 makes the smallest absolute
/// angle with the +x axis; ties by distance, then index.
NodeId snode(std::span<const Point2> points, NodeId n1);

} // namespace trim
