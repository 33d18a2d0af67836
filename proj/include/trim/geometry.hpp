#pragma once

#include <cmath>

namespace trim {

struct Point2
{
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point2 a) { return dot(a, a); }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(b - a); }
inline double dist2(Point2 a, Point2 b) { return norm2(b - a); }
inline Point2 midpoint(Point2 a, Point2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Tolerance bands used by the floating-point predicates.
///
/// `zero_strip` is relative: three points count as collinear when the
/// orientation determinant is below zero_strip times the squared length of
/// the longest side, i.e. when one point lies within a strip of relative
/// width zero_strip around the line through the other two.
struct Tolerances
{
    double zero_strip = 1e-12;
    double incircle_eps = 1e-10;
};

struct Circumcircle
{
    Point2 center;
    double r2 = 0.0;
    bool degenerate = false;
};

enum class InCircle { inside, on, outside };

/// +1 if c is strictly left of a->b, -1 if strictly right, 0 if collinear
/// within the zero strip.
int orient2d(Point2 a, Point2 b, Point2 c, const Tolerances& tol = {});

/// Raw orientation determinant, twice the signed area of (a, b, c).
double orient2d_det(Point2 a, Point2 b, Point2 c);

Circumcircle circumcircle(Point2 n1, Point2 n2, Point2 n3, const Tolerances& tol = {});

/// Classifies d against the circumcircle of (a, b, c).
/// Throws MeshError(DegenerateTriangle) when a, b, c are collinear.
InCircle incircle_test(Point2 a, Point2 b, Point2 c, Point2 d, const Tolerances& tol = {});

/// 1 iff segments a-b and p-q properly cross. Touching at an endpoint or
/// sharing an endpoint is not a crossing; collinear segments cross only when
/// they overlap over a positive length.
int edge_cross(Point2 a, Point2 b, Point2 p, Point2 q, const Tolerances& tol = {});

/// Signed area of the triangle (a, b, c); positive when counter-clockwise.
inline double signed_area(Point2 a, Point2 b, Point2 c) { return 0.5 * orient2d_det(a, b, c); }

/// Interior angle at `apex` between the rays towards p and q, in radians.
inline double angle_at(Point2 apex, Point2 p, Point2 q)
{
    const Point2 u = p - apex;
    const Point2 v = q - apex;
    return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

/// Distance from p to the closed segment a-b.
double segment_distance(Point2 p, Point2 a, Point2 b);

inline Point2 centroid(Point2 a, Point2 b, Point2 c)
{
    return {(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
}

} // namespace trim
