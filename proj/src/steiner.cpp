#include "trim/steiner.hpp"

#include "trim/delaunay.hpp"

namespace trim {

MeshResult steiner_refine(const DiscretizedBoundary& boundary, const SpacingField& spacing,
                          const SteinerFlags& flags)
{
    if (!(flags.factor >= 1.0 && flags.factor <= 3.0))
        throw MeshError(DiagnosticCode::InvalidParameter, "factor must lie in [1, 3]");
    validate_spacing(spacing);

    MeshResult out = dlny_domain(boundary);
    Mesh& mesh = out.mesh;
    int round = 0;
    for (; round < flags.max_iterations; ++round) {
        std::optional<std::size_t> budget;
        if (flags.node_cap)
            budget = *flags.node_cap > mesh.nn() ? *flags.node_cap - mesh.nn() : 0;
        if (nodins(mesh, spacing, flags.factor, flags.insert_mode, budget, &out.warnings) == 0)
            break;
        edswap(mesh, SwapCriterion::DelaunayMaxMin);
        if (flags.do_smoothing) {
            smooth(mesh, 1000, 1e-3, &out.warnings);
            edswap(mesh, SwapCriterion::DelaunayMaxMin);
        }
    }
    if (round == flags.max_iterations)
        out.warnings.push_back({DiagnosticCode::CheckMeshWarning,
                                "refinement still inserting after " + std::to_string(flags.max_iterations) +
                                    " rounds"});
    if (flags.final_swap)
        edswap(mesh, *flags.final_swap);
    if (flags.final_edge_check && !crossing_pairs(mesh).empty())
        throw MeshError(DiagnosticCode::EdgeCrossingDetected, "edge-crossing in the final mesh");
    return out;
}

MeshResult steiner_mesh(const Domain& domain, const SpacingField& spacing, const SteinerFlags& flags)
{
    if (!(flags.factor >= 1.0 && flags.factor <= 3.0))
        throw MeshError(DiagnosticCode::InvalidParameter, "factor must lie in [1, 3]");
    DiscretizeOptions opt;
    opt.use_spline = flags.use_spline;
    opt.node_cap = flags.node_cap;
    return steiner_refine(discretize_boundary(domain, spacing, opt), spacing, flags);
}

} // namespace trim
