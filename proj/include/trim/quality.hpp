#pragma once

#include "trim/mesh.hpp"
#include "trim/spacing.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace trim {

enum class StatKind
{
    NodeValence = 1,
    TrianglesPerNode,
    AreaRatio,
    EdgeLengthRatio,
    AngleRatio,
};

inline constexpr std::size_t kHistogramBins = 21;

struct QualityHistogram
{
    StatKind kind = StatKind::NodeValence;
    std::array<std::int64_t, kHistogramBins> bins{};
    /// Bin width in percent for the ratio kinds, 1 for the count kinds.
    double width = 1.0;

    std::int64_t population() const;
    /// Lower edge of bin i (percent or count).
    double lower(std::size_t i) const { return width * static_cast<double>(i); }
};

std::string_view to_string(StatKind kind);

/// Kinds 1-2 count neighbours / incident triangles per node (last bin >= 20).
/// Kind 3 bins triangle areas in 20 % steps of the spacing-triangle area at
/// the centroid, kind 4 edge lengths in 20 % steps of delta at the midpoint,
/// kind 5 interior angles in 15 % steps of 60 degrees; the last bin of each
/// collects everything beyond. An Euler mismatch is recorded as a warning.
QualityHistogram stmsh(const Mesh& mesh, const SpacingField& spacing, StatKind kind,
                       Warnings* warnings = nullptr);

/// Header line plus one `lo..hi: count` line per bin.
std::string format_report(const QualityHistogram& h);

} // namespace trim
