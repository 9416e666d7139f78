#include "v2n/geometry.hpp"

#include <cmath>

namespace v2n {

double distance(Position a, Position b) { return std::hypot(b.x - a.x, b.y - a.y); }

double bearing(Position from, Position to)
{
    const double dx = to.x - from.x;
    const double dy = to.y - from.y;
    if (dx == 0.0 && dy == 0.0) {
        return 0.0;
    }
    return wrap_to_two_pi(std::atan2(dy, dx));
}

double wrap_to_pi(double angle)
{
    double a = std::remainder(angle, kTwoPi);
    // remainder() may return exactly -pi; both ends are accepted.
    return a;
}

double wrap_to_two_pi(double angle)
{
    double a = std::fmod(angle, kTwoPi);
    if (a < 0.0) {
        a += kTwoPi;
    }
    if (a >= kTwoPi) {
        a = 0.0;
    }
    return a;
}

Position lerp(Position a, Position b, double frac)
{
    return {a.x + frac * (b.x - a.x), a.y + frac * (b.y - a.y)};
}

} // namespace v2n
