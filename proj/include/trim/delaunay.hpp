#pragma once

#include "trim/boundary.hpp"
#include "trim/mesh.hpp"

#include <optional>
#include <span>

namespace trim {

enum class DlnyMode
{
    NoBoundaries,
    WithBoundaries,
    WithSplineBoundaries,
};

struct DlnyOptions
{
    Tolerances tol;
    /// Edge budget; exceeding it is InputTooSmall (the old work-array limit).
    std::optional<std::size_t> max_edges;
};

/// Delaunay triangulation of a free point set. The front starts from the
/// edge fnode -> snode, which has every other node on its left.
MeshResult dlny_points(std::span<const Point2> points, const DlnyOptions& options = {});

/// Constrained Delaunay triangulation of the region left of the discretized
/// boundary, with optional free nodes strictly inside the region. Boundary
/// nodes keep their ids; free nodes follow them.
MeshResult dlny_domain(const DiscretizedBoundary& boundary, std::span<const Point2> free_nodes = {},
                       const DlnyOptions& options = {});

} // namespace trim
