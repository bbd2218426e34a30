#include "circumnav/geometry.hpp"

#include <cmath>

#include "circumnav/errors.hpp"

namespace circumnav {

double wrap_angle(double theta) {
    if (!std::isfinite(theta)) {
        throw DegenerateGeometry("wrap_angle: non-finite angle");
    }
    // remainder() lands in [-pi, pi]; nudge the closed lower endpoint so the
    // result lives in (-pi, pi] and wrap_angle(pi) == pi, wrap_angle(-pi) == pi.
    double r = std::remainder(theta, kTwoPi);
    if (r <= -kPi) r += kTwoPi;
    return r;
}

RelativeGeometry relative_geometry(const AgentState& i, const AgentState& j) {
    const double dx = j.x - i.x;
    const double dy = j.y - i.y;
    const double range = std::hypot(dx, dy);
    if (range == 0.0) {
        throw DegenerateGeometry("relative_geometry: coincident agents, LOS undefined");
    }
    double los = std::atan2(dy, dx);
    if (los <= -kPi) los += kTwoPi;  // atan2 may return exactly -pi
    return {range, los};
}

std::pair<double, double> polar_rates(const AgentState& i, const AgentState& j) {
    const RelativeGeometry rel = relative_geometry(i, j);
    const double range_rate =
        j.v * std::cos(j.gamma - rel.los) - i.v * std::cos(i.gamma - rel.los);
    const double los_rate =
        (j.v * std::sin(j.gamma - rel.los) - i.v * std::sin(i.gamma - rel.los)) / rel.range;
    return {range_rate, los_rate};
}

AgentState advance_arc(const AgentState& s, double turn_rate, double dt) {
    // Chord form of the constant-rate arc:
    //   x += v*dt*sinc(u*dt/2)*cos(gamma + u*dt/2),   sinc(t) = sin(t)/t
    // Exact for every turn rate and free of the 1/u cancellation that the
    // textbook (v/u)(sin(g+u dt) - sin g) form suffers near u = 0.
    const double half = 0.5 * turn_rate * dt;
    const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
    AgentState out = s;
    out.x += s.v * dt * sinc * std::cos(s.gamma + half);
    out.y += s.v * dt * sinc * std::sin(s.gamma + half);
    out.gamma += turn_rate * dt;
    return out;
}

}  // namespace circumnav
