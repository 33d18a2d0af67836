#pragma once

#include "trim/diagnostics.hpp"
#include "trim/geometry.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace trim {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;
using TriId = std::int32_t;

inline constexpr TriId kNoTri = -1;

/// Directed edge a->b. `left`/`right` are the triangles on either side of
/// the directed edge; `active` is the front flag (still awaiting a triangle).
struct Edge
{
    NodeId a = 0;
    NodeId b = 0;
    TriId left = kNoTri;
    TriId right = kNoTri;
    bool boundary = false;
    bool active = false;

    int triangle_count() const { return (left != kNoTri) + (right != kNoTri); }
    NodeId other(NodeId n) const { return n == a ? b : a; }
    bool has(NodeId n) const { return n == a || n == b; }
};

/// Counter-clockwise triangle. edges[i] joins nodes[i] and nodes[(i+1)%3].
struct Triangle
{
    std::array<NodeId, 3> nodes{};
    std::array<EdgeId, 3> edges{};
};

struct Mesh
{
    std::vector<Point2> points;
    std::vector<Edge> edges;
    std::vector<Triangle> triangles;

    std::size_t nn() const { return points.size(); }
    std::size_t nl() const { return edges.size(); }
    std::size_t nt() const { return triangles.size(); }

    Point2 point(NodeId n) const { return points[static_cast<std::size_t>(n)]; }
    const Edge& edge(EdgeId e) const { return edges[static_cast<std::size_t>(e)]; }
    const Triangle& triangle(TriId t) const { return triangles[static_cast<std::size_t>(t)]; }

    double triangle_area(TriId t) const;
    Point2 triangle_centroid(TriId t) const;
};

/// A generated mesh together with the positive-ifail conditions met on the
/// way; hard failures are thrown as MeshError instead.
struct MeshResult
{
    Mesh mesh;
    Warnings warnings;
};

/// Structural equality over coordinates, edges and triangles. Front flags
/// are not part of a finished mesh and are ignored.
bool same_structure(const Mesh& a, const Mesh& b);

/// Maintains an unordered node-pair index over a Mesh while generators and
/// remeshing tools mutate it.
class MeshEditor
{
public:
    explicit MeshEditor(Mesh& mesh);

    Mesh& mesh() { return mesh_; }
    const Mesh& mesh() const { return mesh_; }

    NodeId add_node(Point2 p);
    void move_node(NodeId n, Point2 p) { mesh_.points[static_cast<std::size_t>(n)] = p; }

    std::optional<EdgeId> find_edge(NodeId a, NodeId b) const;
    /// Adds a->b. Throws std::logic_error if the pair already exists.
    EdgeId add_edge(NodeId a, NodeId b, bool boundary = false, bool active = false);
    Edge& edge(EdgeId e) { return mesh_.edges[static_cast<std::size_t>(e)]; }

    /// True when a triangle could be attached on the side of edge {a,b} that
    /// lies left of the direction a->b (or the edge does not exist yet).
    bool side_free(NodeId a, NodeId b) const;

    /// Appends the counter-clockwise triangle (n0, n1, n2), creating missing
    /// edges as interior edges.
    TriId add_triangle(NodeId n0, NodeId n1, NodeId n2);
    /// Clears the references the triangle's edges hold to it.
    void detach_triangle(TriId t);
    /// Re-targets triangle t onto new nodes, creating edges as needed.
    void attach_triangle(TriId t, std::array<NodeId, 3> nodes);
    /// Changes the endpoints of an existing edge and re-indexes it.
    void relink_edge(EdgeId e, NodeId a, NodeId b);

private:
    static std::uint64_t key(NodeId a, NodeId b);
    void link(TriId t);

    Mesh& mesh_;
    std::unordered_map<std::uint64_t, EdgeId> index_;
};

enum class AdjacencyKind
{
    TriPerTri = 1,
    NodePerNode,
    TriPerNode,
    NodePerTri,
    EdgePerNode,
    NodePerEdge,
    TriPerEdge,
    EdgePerTri,
};

/// Ragged connectivity table: rows[i] lists the entities related to entity i
/// of the "per" kind; counts[i] == rows[i].size() plays the role of the
/// counter row of the original connectivity matrices.
struct Connectivity
{
    std::vector<std::int32_t> counts;
    std::vector<std::vector<std::int32_t>> rows;
};

/// Throws MeshError(CapacityExceeded) when `max_arity` is given and a row
/// would exceed it.
Connectivity adjacency(const Mesh& mesh, AdjacencyKind kind,
                       std::optional<std::size_t> max_arity = std::nullopt);

/// nn - nl + nt == 1 - holes.
bool euler_check(const Mesh& mesh, int holes);

/// Number of closed loops formed by boundary edges.
int count_boundary_loops(const Mesh& mesh);

enum class ViolationKind
{
    IdOutOfRange,
    DegenerateEdge,
    DuplicateEdge,
    NonCcwTriangle,
    BackReferenceMismatch,
    EdgeCrossing,
};

struct Violation
{
    ViolationKind kind;
    std::string detail;
};

std::string_view to_string(ViolationKind kind);

std::vector<Violation> validate_mesh(const Mesh& mesh, const Tolerances& tol = {});

/// All pairs of edges that properly cross, found with an x-sorted sweep.
std::vector<std::pair<EdgeId, EdgeId>> crossing_pairs(const Mesh& mesh, const Tolerances& tol = {});

/// Sum of signed triangle areas.
double total_area(const Mesh& mesh);

/// Boundary nodes are endpoints of edges flagged `boundary`.
std::vector<bool> boundary_nodes(const Mesh& mesh);

} // namespace trim
