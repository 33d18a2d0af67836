#pragma once

#include "trim/boundary.hpp"
#include "trim/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace support {

using trim::Point2;

inline std::string corpus_path(const std::string& name)
{
    return std::string(TRIM_DATA_DIR) + "/" + name;
}

inline std::string read_corpus(const std::string& name)
{
    std::ifstream in(corpus_path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline trim::Domain polygon_domain(const std::vector<Point2>& ring)
{
    std::vector<trim::BoundarySegment> segs;
    const int n = static_cast<int>(ring.size());
    for (int i = 0; i < n; ++i)
        segs.push_back({i + 1, {ring[static_cast<std::size_t>(i)], ring[static_cast<std::size_t>((i + 1) % n)]},
                        (i + 1) % n + 1});
    return trim::make_domain(std::move(segs));
}

inline trim::Domain unit_square()
{
    return polygon_domain({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

/// Hand-assembled mesh from CCW triangles; edges on exactly one triangle are
/// flagged as boundary.
inline trim::Mesh build_mesh(std::vector<Point2> points, const std::vector<std::array<trim::NodeId, 3>>& tris)
{
    trim::Mesh mesh;
    mesh.points = std::move(points);
    trim::MeshEditor ed(mesh);
    for (const auto& t : tris)
        ed.add_triangle(t[0], t[1], t[2]);
    for (auto& e : mesh.edges)
        e.boundary = e.triangle_count() == 1;
    return mesh;
}

/// Textbook 3x3 lifted determinant for the incircle test, evaluated in long
/// double. Positive when d is inside the circle through CCW a, b, c.
inline long double incircle_det(Point2 a, Point2 b, Point2 c, Point2 d)
{
    auto row = [&](Point2 p) {
        const long double x = static_cast<long double>(p.x) - d.x;
        const long double y = static_cast<long double>(p.y) - d.y;
        return std::array<long double, 3>{x, y, x * x + y * y};
    };
    const auto r0 = row(a), r1 = row(b), r2 = row(c);
    return r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
           r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
}

/// Circumcentre by solving the perpendicular-bisector system directly.
inline std::pair<Point2, double> circle_through(Point2 a, Point2 b, Point2 c)
{
    const long double bx = b.x - a.x, by = b.y - a.y, cx = c.x - a.x, cy = c.y - a.y;
    const long double d = 2 * (bx * cy - by * cx);
    const long double ux = (cy * (bx * bx + by * by) - by * (cx * cx + cy * cy)) / d;
    const long double uy = (bx * (cx * cx + cy * cy) - cx * (bx * bx + by * by)) / d;
    return {{static_cast<double>(a.x + ux), static_cast<double>(a.y + uy)},
            static_cast<double>(ux * ux + uy * uy)};
}

/// Triangles whose circumcircle strictly contains another mesh node, with
/// the strictness measured relative to r^2.
inline int empty_circle_failures(const trim::Mesh& mesh, double eps = 1e-10)
{
    int failures = 0;
    for (const auto& t : mesh.triangles) {
        const auto [c, r2] = circle_through(mesh.point(t.nodes[0]), mesh.point(t.nodes[1]), mesh.point(t.nodes[2]));
        for (trim::NodeId n = 0; n < static_cast<trim::NodeId>(mesh.nn()); ++n) {
            if (n == t.nodes[0] || n == t.nodes[1] || n == t.nodes[2])
                continue;
            const Point2 p = mesh.point(n);
            const double d2 = (p.x - c.x) * (p.x - c.x) + (p.y - c.y) * (p.y - c.y);
            if (d2 < r2 * (1.0 - eps)) {
                ++failures;
                break;
            }
        }
    }
    return failures;
}

inline std::vector<Point2> random_points(std::uint64_t seed, int n)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point2> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back({u(rng), u(rng)});
    return pts;
}

/// All interior angles, ascending.
inline std::vector<double> sorted_angles(const trim::Mesh& mesh)
{
    std::vector<double> out;
    for (const auto& t : mesh.triangles)
        for (int i = 0; i < 3; ++i) {
            const Point2 o = mesh.point(t.nodes[i]);
            const Point2 p = mesh.point(t.nodes[(i + 1) % 3]);
            const Point2 q = mesh.point(t.nodes[(i + 2) % 3]);
            const double ux = p.x - o.x, uy = p.y - o.y, vx = q.x - o.x, vy = q.y - o.y;
            out.push_back(std::acos(std::clamp((ux * vx + uy * vy) / std::hypot(ux, uy) / std::hypot(vx, vy), -1.0, 1.0)));
        }
    std::sort(out.begin(), out.end());
    return out;
}

/// Structured n x n grid on the unit square, cut into triangles along
/// alternating diagonals, with interior nodes jittered by up to `jitter`
/// of a cell.
inline trim::Mesh perturbed_grid(int n, double jitter, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-jitter, jitter);
    std::vector<Point2> pts;
    const double h = 1.0 / n;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            Point2 p{i * h, j * h};
            if (i > 0 && i < n && j > 0 && j < n)
                p = {p.x + u(rng) * h, p.y + u(rng) * h};
            pts.push_back(p);
        }
    std::vector<std::array<trim::NodeId, 3>> tris;
    auto id = [&](int i, int j) { return static_cast<trim::NodeId>(j * (n + 1) + i); };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if ((i + j) % 2 == 0) {
                tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
                tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
            } else {
                tris.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
                tris.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
            }
        }
    return build_mesh(std::move(pts), tris);
}

inline bool has_boundary_edge(const trim::Mesh& mesh, trim::NodeId a, trim::NodeId b)
{
    for (const auto& e : mesh.edges)
        if (e.a == a && e.b == b && e.boundary)
            return true;
    return false;
}

} // namespace support
