#include "trim/geometry.hpp"

#include "trim/diagnostics.hpp"

#include <algorithm>

namespace trim {

double orient2d_det(Point2 a, Point2 b, Point2 c)
{
    // Evaluated relative to c so that swapping a and b negates it exactly.
    return (a.x - c.x) * (b.y - c.y) - (a.y - c.y) * (b.x - c.x);
}

int orient2d(Point2 a, Point2 b, Point2 c, const Tolerances& tol)
{
    const double det = orient2d_det(a, b, c);
    const double scale = std::max({dist2(a, b), dist2(b, c), dist2(c, a)});
    if (std::abs(det) <= tol.zero_strip * scale)
        return 0;
    return det > 0.0 ? 1 : -1;
}

Circumcircle circumcircle(Point2 n1, Point2 n2, Point2 n3, const Tolerances& tol)
{
    Circumcircle cc;
    if (orient2d(n1, n2, n3, tol) == 0) {
        cc.degenerate = true;
        return cc;
    }
    const Point2 b = n2 - n1;
    const Point2 c = n3 - n1;
    const double d = 2.0 * cross(b, c);
    const double bb = norm2(b);
    const double c2 = norm2(c);
    const Point2 u{(c.y * bb - b.y * c2) / d, (b.x * c2 - c.x * bb) / d};
    cc.center = n1 + u;
    cc.r2 = norm2(u);
    return cc;
}

InCircle incircle_test(Point2 a, Point2 b, Point2 c, Point2 d, const Tolerances& tol)
{
    const Circumcircle cc = circumcircle(a, b, c, tol);
    if (cc.degenerate)
        throw MeshError(DiagnosticCode::DegenerateTriangle,
                        "incircle test on collinear triangle");
    const double diff = dist2(d, cc.center) - cc.r2;
    if (std::abs(diff) <= tol.incircle_eps * cc.r2)
        return InCircle::on;
    return diff < 0.0 ? InCircle::inside : InCircle::outside;
}

namespace {

bool collinear_overlap(Point2 a, Point2 b, Point2 p, Point2 q, const Tolerances& tol)
{
    const Point2 dir = b - a;
    const double len2 = norm2(dir);
    const double tp = dot(p - a, dir) / len2;
    const double tq = dot(q - a, dir) / len2;
    const double lo = std::max(0.0, std::min(tp, tq));
    const double hi = std::min(1.0, std::max(tp, tq));
    return hi - lo > std::max(tol.zero_strip, 1e-12);
}

} // namespace

int edge_cross(Point2 a, Point2 b, Point2 p, Point2 q, const Tolerances& tol)
{
    const int o1 = orient2d(a, b, p, tol);
    const int o2 = orient2d(a, b, q, tol);
    const int o3 = orient2d(p, q, a, tol);
    const int o4 = orient2d(p, q, b, tol);

    if (o1 == 0 && o2 == 0)
        return collinear_overlap(a, b, p, q, tol) ? 1 : 0;
    if (o3 == 0 && o4 == 0)
        return collinear_overlap(p, q, a, b, tol) ? 1 : 0;
    if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0)
        return 0;
    return (o1 != o2 && o3 != o4) ? 1 : 0;
}

double segment_distance(Point2 p, Point2 a, Point2 b)
{
    const Point2 ab = b - a;
    const double len2 = norm2(ab);
    if (len2 == 0.0)
        return dist(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return dist(p, a + t * ab);
}

} // namespace trim
