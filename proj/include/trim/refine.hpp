#pragma once

#include "trim/mesh.hpp"
#include "trim/spacing.hpp"

#include <functional>
#include <optional>

namespace trim {

enum class SwapCriterion
{
    DelaunayMaxMin,
    MinMax,
};

enum class InsertMode
{
    Centroid,
    Circumcenter,
    DeltaFromVertices,
};

/// Strict margin on the 180 degree rule, in radians.
inline constexpr double kSwapAngleMargin = 1e-9;

/// Area of the equilateral triangle with side `delta`.
double spacing_triangle_area(double delta);

/// Splits every triangle present on entry whose area exceeds
/// factor * spacing_triangle_area(delta(centroid)). A split keeps the old
/// triangle id for one of the three children and appends the other two.
/// With `cap` set, insertion stops once that many nodes were added and an
/// InsertSpaceExhausted warning is recorded.
std::size_t nodins(Mesh& mesh, const SpacingField& spacing, double factor, InsertMode mode,
                   std::optional<std::size_t> cap = std::nullopt, Warnings* warnings = nullptr);

/// Receives the mesh after each swap and the id of the swapped edge.
using SwapObserver = std::function<void(const Mesh&, EdgeId)>;

/// Lawson sweeps over interior edges until a full pass swaps nothing.
/// Returns the number of swaps.
std::size_t edswap(Mesh& mesh, SwapCriterion criterion, const SwapObserver& on_swap = {});

/// Whether swapping interior edge `e` improves the pair of triangles under
/// the criterion.
bool should_swap(const Mesh& mesh, EdgeId e, SwapCriterion criterion);

struct SmoothOutcome
{
    /// Largest node displacement of the last sweep.
    double max_displacement = 0.0;
    int sweeps = 0;
    bool converged = false;
};

/// Equal-stiffness spring smoothing: each sweep moves every free node to the
/// centroid of its neighbours, all computed from the previous positions.
/// Moves that would invert a triangle are withheld for that sweep.
/// Converged when no node moves more than tol_fraction * sqrt(avdist),
/// avdist being the mean squared edge length.
SmoothOutcome smooth(Mesh& mesh, int max_sweeps = 1000, double tol_fraction = 1e-3,
                     Warnings* warnings = nullptr);

} // namespace trim
