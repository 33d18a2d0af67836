#pragma once

#include "trim/boundary.hpp"
#include "trim/refine.hpp"

#include <optional>

namespace trim {

struct SteinerFlags
{
    bool use_spline = false;
    InsertMode insert_mode = InsertMode::Centroid;
    bool do_smoothing = false;
    bool final_edge_check = false;
    double factor = 1.0;
    /// Criterion of the last swap pass; the refinement loop always uses
    /// DelaunayMaxMin. Empty skips the last pass.
    std::optional<SwapCriterion> final_swap = SwapCriterion::DelaunayMaxMin;
    int max_iterations = 100;
    std::optional<std::size_t> node_cap;
};

/// Constrained Delaunay of the discretized boundary followed by rounds of
/// centroid insertion, Delaunay swapping and optional smoothing until no
/// triangle is larger than factor spacing triangles.
MeshResult steiner_refine(const DiscretizedBoundary& boundary, const SpacingField& spacing,
                          const SteinerFlags& flags = {});

MeshResult steiner_mesh(const Domain& domain, const SpacingField& spacing, const SteinerFlags& flags = {});

} // namespace trim
