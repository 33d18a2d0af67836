#pragma once

#include "trim/afm.hpp"
#include "trim/quality.hpp"
#include "trim/refine.hpp"
#include "trim/spacing.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace trim {

enum class Method
{
    Delaunay,
    Afm,
    Steiner,
};

struct MeshParams
{
    Method method = Method::Steiner;
    AfmVersion afm_version = AfmVersion::FirstActiveEdge;
    /// Empty means no swap pass.
    std::optional<SwapCriterion> swap = SwapCriterion::DelaunayMaxMin;
    bool smoothing = false;
    bool final_edge_check = false;
    double factor = 1.0;
    SpacingField spacing = UniformSpacing{10.0};
    bool use_spline = false;
};

/// Throws MeshError(InvalidParameter).
void validate_params(const MeshParams& params);

Method parse_method(std::string_view text);
AfmVersion parse_afm_version(std::string_view text);
std::optional<SwapCriterion> parse_swap(std::string_view text);
std::string_view to_string(Method method);
std::string_view to_string(AfmVersion version);
std::string_view swap_name(std::optional<SwapCriterion> swap);

/// Reads the JSON parameter object used by the HTTP service. Missing keys
/// keep their defaults; `spacing` uses the same text form as the CLI.
MeshParams params_from_json(std::string_view json);
std::string params_to_json(const MeshParams& params);

struct MeshRun
{
    Mesh mesh;
    std::array<QualityHistogram, 5> stats;
    Warnings warnings;
};

/// Parses `.mg` text, meshes it with the selected method and gathers the
/// five statistics.
MeshRun run_mesh(std::string_view mg_text, const MeshParams& params);

/// Statistics as a JSON array of {kind, name, width, total, bins}.
std::string stats_json(const std::array<QualityHistogram, 5>& stats);

std::array<QualityHistogram, 5> all_stats(const Mesh& mesh, const SpacingField& spacing,
                                          Warnings* warnings = nullptr);

} // namespace trim
