#pragma once

#include <numbers>

namespace v2n {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Planar position in meters. The whole simulator works in 2-D.
struct Position {
    double x = 0.0;
    double y = 0.0;
    friend constexpr bool operator==(Position, Position) = default;
};

double distance(Position a, Position b);

/// Azimuth of the vector from `from` to `to`, in [0, 2*pi). Coincident
/// points give 0.
double bearing(Position from, Position to);

/// Wraps an angle into [-pi, pi].
double wrap_to_pi(double angle);

/// Wraps an angle into [0, 2*pi).
double wrap_to_two_pi(double angle);

Position lerp(Position a, Position b, double frac);

} // namespace v2n
