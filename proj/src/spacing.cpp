#include "trim/spacing.hpp"

#include "trim/diagnostics.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

namespace trim {

namespace {

template <class... Fs>
struct overloaded : Fs...
{
    using Fs::operator()...;
};

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::vector<double> parse_numbers(std::string_view text, std::string_view spec)
{
    std::vector<double> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = text.substr(0, comma);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || ptr != item.data() + item.size() || !std::isfinite(v))
            throw MeshError(DiagnosticCode::InvalidParameter,
                            "bad number '" + std::string(item) + "' in spacing '" + std::string(spec) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::string num(double v)
{
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

} // namespace

double stripe_offset(const StripeSpacing& s, double x, double y)
{
    // r * sin(polar - alpha) expanded in Cartesian form.
    return std::abs((y - s.yc) * std::cos(s.alpha) - (x - s.xc) * std::sin(s.alpha));
}

double eval_spacing(const SpacingField& field, double x, double y)
{
    return std::visit(
        overloaded{
            [](const UniformSpacing& u) { return u.delta; },
            [&](const CircularSpacing& c) {
                const double r2 = (x - c.xs) * (x - c.xs) + (y - c.ys) * (y - c.ys);
                return c.delta_a + (c.delta_b - c.delta_a) * std::exp(-c.beta * r2);
            },
            [&](const StripeSpacing& s) { return s.delta_a + s.delta_b * stripe_offset(s, x, y) / s.length; },
        },
        field);
}

void validate_spacing(const SpacingField& field)
{
    auto fail = [](const std::string& m) { throw MeshError(DiagnosticCode::InvalidParameter, m); };
    auto finite = [](std::initializer_list<double> vs) {
        for (double v : vs)
            if (!std::isfinite(v))
                return false;
        return true;
    };
    std::visit(overloaded{
                   [&](const UniformSpacing& u) {
                       if (!(u.delta > 0.0) || !std::isfinite(u.delta))
                           fail("uniform spacing must be positive");
                   },
                   [&](const CircularSpacing& c) {
                       if (!finite({c.delta_a, c.delta_b, c.beta, c.xs, c.ys}))
                           fail("circular spacing parameters must be finite");
                       if (!(c.delta_a > 0.0) || !(c.delta_b > 0.0))
                           fail("circular spacing deltas must be positive");
                       if (!(c.beta > 0.0))
                           fail("circular spacing growth parameter must be positive");
                   },
                   [&](const StripeSpacing& s) {
                       if (!finite({s.delta_a, s.delta_b, s.alpha, s.length, s.xc, s.yc}))
                           fail("stripe spacing parameters must be finite");
                       if (!(s.delta_a > 0.0) || !(s.delta_b > 0.0))
                           fail("stripe spacing deltas must be positive");
                       if (!(s.length > 0.0))
                           fail("stripe length must be positive");
                   },
               },
               field);
}

SpacingField parse_spacing(std::string_view text)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw MeshError(DiagnosticCode::InvalidParameter,
                        "spacing must look like kind:values, got '" + std::string(text) + "'");
    const std::string_view kind = text.substr(0, colon);
    const auto v = parse_numbers(text.substr(colon + 1), text);
    auto want = [&](std::size_t n) {
        if (v.size() != n)
            throw MeshError(DiagnosticCode::InvalidParameter,
                            std::string(kind) + " spacing takes " + std::to_string(n) + " values");
    };

    SpacingField field;
    if (kind == "uniform") {
        want(1);
        field = UniformSpacing{v[0]};
    } else if (kind == "circular") {
        want(5);
        field = CircularSpacing{v[0], v[1], v[2], v[3], v[4]};
    } else if (kind == "stripe") {
        want(6);
        field = StripeSpacing{v[0], v[1], v[2] * kDegToRad, v[3], v[4], v[5]};
    } else {
        throw MeshError(DiagnosticCode::InvalidParameter, "unknown spacing kind '" + std::string(kind) + "'");
    }
    validate_spacing(field);
    return field;
}

std::string format_spacing(const SpacingField& field)
{
    return std::visit(overloaded{
                          [](const UniformSpacing& u) { return "uniform:" + num(u.delta); },
                          [](const CircularSpacing& c) {
                              return "circular:" + num(c.delta_a) + "," + num(c.delta_b) + "," +
                                     num(c.beta) + "," + num(c.xs) + "," + num(c.ys);
                          },
                          [](const StripeSpacing& s) {
                              return "stripe:" + num(s.delta_a) + "," + num(s.delta_b) + "," +
                                     num(s.alpha / kDegToRad) + "," + num(s.length) + "," +
                                     num(s.xc) + "," + num(s.yc);
                          },
                      },
                      field);
}

} // namespace trim
