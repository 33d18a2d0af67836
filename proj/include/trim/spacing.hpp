#pragma once

#include <string>
#include <string_view>
#include <variant>

namespace trim {

/// Constant spacing everywhere.
struct UniformSpacing
{
    double delta = 1.0;
};

/// Spacing that relaxes from `delta_b` at the centre (xs, ys) towards
/// `delta_a` in the far field: delta_a + (delta_b - delta_a) * exp(-beta r^2).
struct CircularSpacing
{
    double delta_a = 1.0;
    double delta_b = 1.0;
    double beta = 1.0;
    double xs = 0.0;
    double ys = 0.0;
};

/// Spacing growing linearly with the distance from a line through (xc, yc)
/// at angle `alpha` (radians): delta_a + delta_b * y_s / length.
struct StripeSpacing
{
    double delta_a = 1.0;
    double delta_b = 1.0;
    double alpha = 0.0;
    double length = 1.0;
    double xc = 0.0;
    double yc = 0.0;
};

using SpacingField = std::variant<UniformSpacing, CircularSpacing, StripeSpacing>;

double eval_spacing(const SpacingField& field, double x, double y);

/// Distance of (x, y) from the stripe's centre line.
double stripe_offset(const StripeSpacing& s, double x, double y);

/// Throws MeshError(InvalidParameter) when a field violates its invariants.
void validate_spacing(const SpacingField& field);

/// Parses `uniform:d`, `circular:dA,dB,beta,Xs,Ys` or
/// `stripe:dA,dB,alphaDeg,L,Xc,Yc`.
SpacingField parse_spacing(std::string_view text);

/// Inverse of parse_spacing (alpha printed in degrees).
std::string format_spacing(const SpacingField& field);

} // namespace trim
