#include "trim/boundary.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace trim {

namespace {

double polygon_area(const std::vector<Point2>& ring)
{
    double a = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i)
        a += cross(ring[i], ring[(i + 1) % ring.size()]);
    return 0.5 * a;
}

/// Winding number of p with respect to a closed ring.
int winding(const std::vector<Point2>& ring, Point2 p)
{
    int w = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point2 a = ring[i];
        const Point2 b = ring[(i + 1) % ring.size()];
        if (a.y <= p.y) {
            if (b.y > p.y && orient2d_det(a, b, p) > 0.0)
                ++w;
        } else if (b.y <= p.y && orient2d_det(a, b, p) < 0.0) {
            --w;
        }
    }
    return w;
}

std::vector<Point2> loop_ring(const Domain& d, const BoundaryLoop& loop)
{
    std::vector<Point2> ring;
    for (std::size_t s : loop.segments) {
        const auto& pts = d.segments[s].points;
        ring.insert(ring.end(), pts.begin(), pts.end() - 1);
    }
    return ring;
}

double bbox_diagonal(const std::vector<BoundarySegment>& segs)
{
    double x0 = std::numeric_limits<double>::max(), y0 = x0;
    double x1 = -x0, y1 = -x0;
    for (const auto& s : segs)
        for (Point2 p : s.points) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
    return std::hypot(x1 - x0, y1 - y0);
}

[[noreturn]] void parse_fail(const std::string& msg, std::optional<int> line = std::nullopt)
{
    throw MeshError(DiagnosticCode::ParseError, msg, line);
}

} // namespace

// --- domain -----------------------------------------------------------------

Domain make_domain(std::vector<BoundarySegment> segments, const Tolerances& tol)
{
    Domain d;
    if (segments.empty())
        parse_fail("domain has no boundary segments");

    std::map<int, std::size_t> by_id;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        if (s.points.size() < 2)
            parse_fail("segment " + std::to_string(s.id) + " needs at least 2 points");
        for (Point2 p : s.points)
            if (!is_finite(p))
                parse_fail("segment " + std::to_string(s.id) + " has a non-finite coordinate");
        if (!by_id.emplace(s.id, i).second)
            parse_fail("segment number " + std::to_string(s.id) + " appears twice");
    }

    std::vector<int> incoming(segments.size(), 0);
    for (const auto& s : segments) {
        auto it = by_id.find(s.next);
        if (it == by_id.end())
            parse_fail("segment " + std::to_string(s.id) + " connects to unknown segment " +
                       std::to_string(s.next));
        ++incoming[it->second];
    }
    for (std::size_t i = 0; i < segments.size(); ++i)
        if (incoming[i] != 1)
            parse_fail("segment " + std::to_string(segments[i].id) +
                       " is not continued by exactly one segment (open or branching chain)");

    const double join_tol = 1e-9 * std::max(bbox_diagonal(segments), 1e-300);
    for (const auto& s : segments) {
        const auto& n = segments[by_id.at(s.next)];
        if (dist(s.points.back(), n.points.front()) > join_tol)
            parse_fail("segment " + std::to_string(s.id) + " does not end where segment " +
                       std::to_string(n.id) + " starts");
    }

    d.segments = std::move(segments);
    std::vector<bool> visited(d.segments.size(), false);
    for (std::size_t start = 0; start < d.segments.size(); ++start) {
        if (visited[start])
            continue;
        BoundaryLoop loop;
        for (std::size_t s = start; !visited[s]; s = by_id.at(d.segments[s].next)) {
            visited[s] = true;
            loop.segments.push_back(s);
        }
        loop.signed_area = polygon_area(loop_ring(d, loop));
        d.loops.push_back(std::move(loop));
    }

    std::size_t outer = 0;
    for (std::size_t l = 1; l < d.loops.size(); ++l)
        if (std::abs(d.loops[l].signed_area) > std::abs(d.loops[outer].signed_area))
            outer = l;
    d.outer_loop = outer;
    if (!(d.loops[outer].signed_area > 0.0))
        throw MeshError(DiagnosticCode::OrientationError,
                        "outer boundary loop must run counter-clockwise (region on the left)");
    const auto outer_ring = loop_ring(d, d.loops[outer]);
    for (std::size_t l = 0; l < d.loops.size(); ++l) {
        if (l == outer)
            continue;
        if (!(d.loops[l].signed_area < 0.0))
            throw MeshError(DiagnosticCode::OrientationError,
                            "inner boundary loop starting at segment " +
                                std::to_string(d.segments[d.loops[l].segments.front()].id) +
                                " must run clockwise (region on the left)");
        if (winding(outer_ring, d.segments[d.loops[l].segments.front()].points.front()) == 0)
            throw MeshError(DiagnosticCode::OrientationError,
                            "inner boundary loop starting at segment " +
                                std::to_string(d.segments[d.loops[l].segments.front()].id) +
                                " lies outside the outer loop");
    }
    (void)tol;
    return d;
}

// --- .mg format ---------------------------------------------------------------

namespace {

struct Line
{
    int number;
    std::vector<std::string_view> fields;
};

std::vector<std::string_view> split_spaces(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ')
            ++i;
        const std::size_t j = s.find(' ', i);
        if (i < s.size())
            out.push_back(s.substr(i, j == std::string_view::npos ? s.size() - i : j - i));
        i = j == std::string_view::npos ? s.size() : j;
    }
    return out;
}

long parse_int(std::string_view f, int line, const char* what)
{
    long v = 0;
    const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc{} || p != f.data() + f.size())
        parse_fail(std::string("expected integer ") + what + ", got '" + std::string(f) + "'", line);
    return v;
}

double parse_real(std::string_view f, int line, const char* what)
{
    double v = 0.0;
    const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc{} || p != f.data() + f.size() || !std::isfinite(v))
        parse_fail(std::string("expected number ") + what + ", got '" + std::string(f) + "'", line);
    return v;
}

} // namespace

Domain parse_mg(std::string_view text, Warnings* warnings)
{
    std::vector<Line> lines;
    int number = 0;
    while (!text.empty() || number == 0) {
        ++number;
        const auto nl = text.find('\n');
        std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!raw.empty() && raw.back() == '\r')
            raw.remove_suffix(1);
        if (raw.find('\t') != std::string_view::npos)
            parse_fail("tab character; fields must be separated by spaces", number);
        auto fields = split_spaces(raw);
        if (!fields.empty())
            lines.push_back({number, std::move(fields)});
        if (text.empty())
            break;
    }

    std::size_t at = 0;
    auto next_line = [&](const char* expecting) -> const Line& {
        if (at >= lines.size())
            parse_fail(std::string("unexpected end of input, expected ") + expecting,
                       lines.empty() ? number : lines.back().number);
        return lines[at++];
    };

    std::optional<std::vector<BoundarySegment>> segments;
    while (at < lines.size()) {
        const Line& head = lines[at++];
        const std::string_view key = head.fields[0];
        if (head.fields.size() != 1)
            parse_fail("expected a record keyword", head.number);

        if (key == "SEGMENT") {
            if (segments)
                parse_fail("second SEGMENT record", head.number);
            const Line& count_line = next_line("segment count");
            if (count_line.fields.size() != 1)
                parse_fail("segment count line must hold one integer", count_line.number);
            const long count = parse_int(count_line.fields[0], count_line.number, "segment count");
            if (count < 1)
                parse_fail("segment count must be positive", count_line.number);

            segments.emplace();
            for (long s = 0; s < count; ++s) {
                const Line& hdr = next_line("segment header");
                if (hdr.fields.size() == 1 && hdr.fields[0] == "ENDRC")
                    parse_fail("ENDRC after " + std::to_string(s) + " segments, " +
                                   std::to_string(count) + " declared",
                               hdr.number);
                if (hdr.fields.size() != 4)
                    parse_fail("segment header needs 4 fields: number, points, next, 0", hdr.number);
                BoundarySegment seg;
                seg.id = static_cast<int>(parse_int(hdr.fields[0], hdr.number, "segment number"));
                const long npts = parse_int(hdr.fields[1], hdr.number, "point count");
                seg.next = static_cast<int>(parse_int(hdr.fields[2], hdr.number, "next segment"));
                if (parse_int(hdr.fields[3], hdr.number, "trailing flag") != 0)
                    parse_fail("last field of a segment header must be 0", hdr.number);
                if (seg.id < 1)
                    parse_fail("segment numbers start at 1", hdr.number);
                if (npts < 2)
                    parse_fail("a segment needs at least 2 points", hdr.number);
                for (long k = 1; k <= npts; ++k) {
                    const Line& pl = next_line("point line");
                    if (pl.fields.size() != 3)
                        parse_fail("point line needs 3 fields: index, x, y (segment declares " +
                                       std::to_string(npts) + " points)",
                                   pl.number);
                    if (parse_int(pl.fields[0], pl.number, "point index") != k)
                        parse_fail("point index out of sequence, expected " + std::to_string(k),
                                   pl.number);
                    seg.points.push_back({parse_real(pl.fields[1], pl.number, "x"),
                                          parse_real(pl.fields[2], pl.number, "y")});
                }
                segments->push_back(std::move(seg));
            }
            const Line& end = next_line("ENDRC");
            if (end.fields.size() != 1 || end.fields[0] != "ENDRC")
                parse_fail("expected ENDRC after " + std::to_string(count) + " segments", end.number);
        } else if (segments) {
            while (true) {
                const Line& l = next_line("ENDRC closing an ignored record");
                if (l.fields.size() == 1 && l.fields[0] == "ENDRC")
                    break;
            }
            if (warnings)
                warnings->push_back({DiagnosticCode::ParseError,
                                     "line " + std::to_string(head.number) + ": ignored record '" +
                                         std::string(key) + "'"});
        } else {
            parse_fail("unknown record '" + std::string(key) + "', expected SEGMENT", head.number);
        }
    }
    if (!segments)
        parse_fail("missing SEGMENT record", lines.empty() ? 1 : lines.front().number);
    return make_domain(std::move(*segments));
}

std::string format_mg(const Domain& domain)
{
    auto num = [](double v) {
        char buf[32];
        const auto r = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, r.ptr);
    };
    std::ostringstream out;
    out << "SEGMENT\n" << domain.segments.size() << '\n';
    for (const auto& s : domain.segments) {
        out << s.id << ' ' << s.points.size() << ' ' << s.next << " 0\n";
        for (std::size_t k = 0; k < s.points.size(); ++k)
            out << k + 1 << ' ' << num(s.points[k].x) << ' ' << num(s.points[k].y) << '\n';
    }
    out << "ENDRC\n";
    return out.str();
}

// --- sampling -----------------------------------------------------------------

std::vector<double> march_positions(double total, const std::function<Point2(double)>& at,
                                    const SpacingField& spacing, std::size_t max_nodes)
{
    std::vector<double> pos{0.0};
    double s = 0.0;
    while (true) {
        const Point2 p = at(s);
        const double h = eval_spacing(spacing, p.x, p.y);
        if (!(h > 0.0) || !std::isfinite(h))
            throw MeshError(DiagnosticCode::InvalidParameter, "spacing must be positive and finite");
        const double next = s + h;
        if (next >= total) {
            const double remainder = total - s;
            if (remainder >= 0.5 * h || pos.size() == 1) {
                const double scale = pos.size() == 1 && remainder < 0.5 * h ? 1.0 : total / next;
                for (double& v : pos)
                    v *= scale;
                pos.push_back(total);
            } else {
                const double scale = total / s;
                for (double& v : pos)
                    v *= scale;
                pos.back() = total;
            }
            break;
        }
        pos.push_back(next);
        s = next;
        if (pos.size() > max_nodes)
            throw MeshError(DiagnosticCode::SegmentOverflow,
                            "more than " + std::to_string(max_nodes) + " nodes on one boundary segment");
    }
    if (pos.size() > max_nodes)
        throw MeshError(DiagnosticCode::SegmentOverflow,
                        "more than " + std::to_string(max_nodes) + " nodes on one boundary segment");
    return pos;
}

std::vector<Point2> polyline_sample(std::span<const Point2> points, const SpacingField& spacing,
                                    const Tolerances& tol, std::size_t max_nodes)
{
    if (points.size() < 2)
        throw MeshError(DiagnosticCode::DegenerateSegment, "segment needs at least 2 describing nodes");
    double total = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i)
        total += dist(points[i - 1], points[i]);

    std::vector<Point2> out{points.front()};
    for (std::size_t i = 1; i < points.size(); ++i) {
        const Point2 a = points[i - 1];
        const Point2 b = points[i];
        const double len = dist(a, b);
        if (len <= tol.zero_strip * std::max(total, 1e-300))
            throw MeshError(DiagnosticCode::DegenerateSegment, "coincident describing nodes");
        const auto pos = march_positions(
            len, [&](double s) { return a + (s / len) * (b - a); }, spacing, max_nodes);
        for (std::size_t k = 1; k + 1 < pos.size(); ++k)
            out.push_back(a + (pos[k] / len) * (b - a));
        out.push_back(b);
        if (out.size() > max_nodes)
            throw MeshError(DiagnosticCode::SegmentOverflow,
                            "more than " + std::to_string(max_nodes) + " nodes on one boundary segment");
    }
    return out;
}

namespace {

/// Natural cubic spline of one coordinate over knots t.
class NaturalSpline
{
public:
    NaturalSpline(std::vector<double> t, std::vector<double> v)
        : t_(std::move(t))
        , v_(std::move(v))
        , m_(t_.size(), 0.0)
    {
        const std::size_t n = t_.size();
        if (n < 3)
            return;
        // Tridiagonal system for interior second derivatives (Thomas algorithm).
        std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = t_[i] - t_[i - 1];
            const double h1 = t_[i + 1] - t_[i];
            const double lower = h0 / 6.0;
            diag[i] = (h0 + h1) / 3.0;
            upper[i] = h1 / 6.0;
            rhs[i] = (v_[i + 1] - v_[i]) / h1 - (v_[i] - v_[i - 1]) / h0;
            if (i > 1) {
                const double w = lower / diag[i - 1];
                diag[i] -= w * upper[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            m_[i] = (rhs[i] - (i + 2 < n ? upper[i] * m_[i + 1] : 0.0)) / diag[i];
            if (i == 1)
                break;
        }
    }

    std::size_t piece(double t) const
    {
        auto it = std::upper_bound(t_.begin(), t_.end(), t);
        std::size_t i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
        return std::min(i, t_.size() - 2);
    }

    double value(double t) const
    {
        const std::size_t i = piece(t);
        const double h = t_[i + 1] - t_[i];
        const double a = (t_[i + 1] - t) / h;
        const double b = (t - t_[i]) / h;
        return a * v_[i] + b * v_[i + 1] +
               ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
    }

    double derivative(double t) const
    {
        const std::size_t i = piece(t);
        const double h = t_[i + 1] - t_[i];
        const double a = (t_[i + 1] - t) / h;
        const double b = (t - t_[i]) / h;
        return (v_[i + 1] - v_[i]) / h + ((1.0 - 3.0 * a * a) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
    }

private:
    std::vector<double> t_, v_, m_;
};

} // namespace

std::vector<Point2> spline_sample(std::span<const Point2> points, const SpacingField& spacing,
                                  const Tolerances& tol, std::size_t max_nodes)
{
    if (points.size() < 2)
        throw MeshError(DiagnosticCode::DegenerateSegment, "segment needs at least 2 describing nodes");
    std::vector<double> t{0.0}, xs{points[0].x}, ys{points[0].y};
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double len = dist(points[i - 1], points[i]);
        if (len == 0.0)
            throw MeshError(DiagnosticCode::DegenerateSegment, "coincident describing nodes");
        t.push_back(t.back() + len);
        xs.push_back(points[i].x);
        ys.push_back(points[i].y);
    }
    const double chord = t.back();
    if (chord < tol.zero_strip)
        throw MeshError(DiagnosticCode::DegenerateSegment, "segment chord length below the zero strip");

    const NaturalSpline sx(t, xs), sy(t, ys);
    auto speed = [&](double u) { return std::hypot(sx.derivative(u), sy.derivative(u)); };

    // Arc-length table: Simpson's rule on a fine uniform grid per knot span.
    constexpr int kSub = 64;
    std::vector<double> tab_t{0.0}, tab_s{0.0};
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double h = (t[i + 1] - t[i]) / kSub;
        for (int k = 0; k < kSub; ++k) {
            const double u0 = t[i] + k * h;
            const double u1 = k + 1 == kSub ? t[i + 1] : u0 + h;
            const double ds = (u1 - u0) / 6.0 * (speed(u0) + 4.0 * speed(0.5 * (u0 + u1)) + speed(u1));
            tab_t.push_back(u1);
            tab_s.push_back(tab_s.back() + ds);
        }
    }
    const double total = tab_s.back();
    auto param_at = [&](double s) {
        if (s <= 0.0)
            return 0.0;
        if (s >= total)
            return chord;
        const auto it = std::upper_bound(tab_s.begin(), tab_s.end(), s);
        const std::size_t j = static_cast<std::size_t>(it - tab_s.begin());
        const double f = (s - tab_s[j - 1]) / (tab_s[j] - tab_s[j - 1]);
        return tab_t[j - 1] + f * (tab_t[j] - tab_t[j - 1]);
    };
    auto at = [&](double s) {
        const double u = param_at(s);
        return Point2{sx.value(u), sy.value(u)};
    };

    const auto pos = march_positions(total, at, spacing, max_nodes);
    std::vector<Point2> out;
    out.reserve(pos.size());
    out.push_back(points.front());
    for (std::size_t k = 1; k + 1 < pos.size(); ++k)
        out.push_back(at(pos[k]));
    out.push_back(points.back());
    return out;
}

// --- discretization ---------------------------------------------------------

DiscretizedBoundary discretize_boundary(const Domain& domain, const SpacingField& spacing,
                                        const DiscretizeOptions& options, const Tolerances& tol)
{
    DiscretizedBoundary out;
    out.mb.assign(domain.segments.size(), 0);
    out.holes = domain.holes();
    MeshEditor ed(out.mesh);

    std::vector<std::size_t> order{domain.outer_loop};
    for (std::size_t l = 0; l < domain.loops.size(); ++l)
        if (l != domain.outer_loop)
            order.push_back(l);

    for (std::size_t l : order) {
        std::vector<NodeId> ids;
        for (std::size_t s : domain.loops[l].segments) {
            const auto& pts = domain.segments[s].points;
            auto samples = options.use_spline
                               ? spline_sample(pts, spacing, tol, options.max_segment_nodes)
                               : polyline_sample(pts, spacing, tol, options.max_segment_nodes);
            out.mb[s] = static_cast<int>(samples.size());
            for (std::size_t k = 0; k + 1 < samples.size(); ++k)
                ids.push_back(ed.add_node(samples[k]));
            if (options.node_cap && out.mesh.nn() > *options.node_cap)
                throw MeshError(DiagnosticCode::NodeBudgetExceeded,
                                "boundary needs more than " + std::to_string(*options.node_cap) + " nodes");
        }
        if (ids.size() < 3)
            throw MeshError(DiagnosticCode::InputTooSmall,
                            "a boundary loop discretizes to fewer than 3 nodes");
        for (std::size_t k = 0; k < ids.size(); ++k)
            ed.add_edge(ids[k], ids[(k + 1) % ids.size()], true, true);
        out.loops.push_back(std::move(ids));
    }

    if (const auto hits = crossing_pairs(out.mesh, tol); !hits.empty())
        throw MeshError(DiagnosticCode::EdgeCrossingDetected,
                        "discretized boundary edges " + std::to_string(hits.front().first) + " and " +
                            std::to_string(hits.front().second) + " cross");
    return out;
}

bool strictly_inside(const DiscretizedBoundary& boundary, Point2 p, const Tolerances& tol)
{
    const Mesh& m = boundary.mesh;
    double x0 = std::numeric_limits<double>::max(), y0 = x0, x1 = -x0, y1 = -x0;
    for (Point2 q : m.points) {
        x0 = std::min(x0, q.x);
        x1 = std::max(x1, q.x);
        y0 = std::min(y0, q.y);
        y1 = std::max(y1, q.y);
    }
    const double strip = tol.zero_strip * std::hypot(x1 - x0, y1 - y0);
    for (const Edge& e : m.edges)
        if (segment_distance(p, m.point(e.a), m.point(e.b)) <= strip)
            return false;
    int w = 0;
    for (const auto& loop : boundary.loops) {
        std::vector<Point2> ring;
        ring.reserve(loop.size());
        for (NodeId n : loop)
            ring.push_back(m.point(n));
        w += winding(ring, p);
    }
    return w != 0;
}

// --- free-node mode ---------------------------------------------------------

NodeId fnode(std::span<const Point2> points)
{
    if (points.empty())
        throw MeshError(DiagnosticCode::EmptyInput, "fnode needs at least one node");
    std::size_t best = 0;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].y < points[best].y)
            best = i;
    return static_cast<NodeId>(best);
}

NodeId snode(std::span<const Point2> points, NodeId n1)
{
    if (points.size() < 2)
        throw MeshError(DiagnosticCode::EmptyInput, "snode needs at least two nodes");
    const Point2 o = points[static_cast<std::size_t>(n1)];
    std::optional<std::size_t> best;
    double best_angle = 0.0, best_d2 = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (static_cast<NodeId>(i) == n1)
            continue;
        const Point2 d = points[i] - o;
        const double angle = std::abs(std::atan2(d.y, d.x));
        const double d2 = norm2(d);
        if (!best || angle < best_angle || (angle == best_angle && d2 < best_d2)) {
            best = i;
            best_angle = angle;
            best_d2 = d2;
        }
    }
    return static_cast<NodeId>(*best);
}

} // namespace trim
