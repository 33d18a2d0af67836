#pragma once

#include "trim/boundary.hpp"
#include "trim/mesh.hpp"
#include "trim/spacing.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace trim {

enum class AfmVersion
{
    FirstActiveEdge,
    SmallestEdge,
};

/// Apex of the ideal triangle on a base edge.
struct IdealVertex
{
    /// Converged leg length of the spacing triangle.
    double delta_m = 0.0;
    /// delta_m clamped to [0.55 |AB|, 2 |AB|].
    double delta_1 = 0.0;
    Point2 p1;
    bool converged = true;
};

inline constexpr double kMinLegRatio = 0.55;
inline constexpr double kMaxLegRatio = 2.0;
inline constexpr double kCandidateReach = 1.5;
inline constexpr double kSnapRatio = 0.4;

/// Iterates the spacing triangle on base a-b until successive heights agree
/// within 1 %, clamps the leg and places the apex left of a->b.
IdealVertex ideal_vertex(Point2 a, Point2 b, const SpacingField& spacing, int max_iterations = 100);

/// A connection candidate: an existing front node, or the ideal apex when
/// `node` is empty.
struct Candidate
{
    std::optional<NodeId> node;
    Point2 position;
};

/// Front nodes inside the circle of radius delta_1 about p1, strictly left
/// of n1->n2 and within 1.5 delta_1 of both n1 and n2, ordered by distance
/// to the base edge (ties by id). The ideal apex is appended last.
std::vector<Candidate> select_candidates(const Mesh& mesh, std::span<const NodeId> front_nodes,
                                         NodeId n1, NodeId n2, const IdealVertex& iv,
                                         const Tolerances& tol = {});

struct AfmOptions
{
    AfmVersion version = AfmVersion::FirstActiveEdge;
    Tolerances tol;
    /// Optional cap on retained (crossing-blocked) base edges.
    std::optional<std::size_t> cross_stack_cap;
    /// Optional cap on the candidate list length.
    std::optional<std::size_t> near_list_cap;
    std::size_t max_triangles = 5'000'000;
    /// Called after each new triangle; must not modify the mesh.
    std::function<void(const Mesh&, TriId)> observer;
};

MeshResult afm_mesh(const DiscretizedBoundary& boundary, const SpacingField& spacing,
                    const AfmOptions& options = {});

} // namespace trim
