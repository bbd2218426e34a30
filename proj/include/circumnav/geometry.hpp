#pragma once

#include <cmath>
#include <numbers>
#include <utility>

namespace circumnav {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Planar unicycle state. Units are SI throughout: metres, radians, seconds.
// The heading is stored unwrapped (continuous on the real line); wrapping is
// applied only where an angular difference is consumed. The forward speed is
// fixed at construction and never mutated afterwards.
struct AgentState {
    double x = 0.0;      // m
    double y = 0.0;      // m
    double gamma = 0.0;  // rad, unwrapped
    double v = 1.0;      // m/s, constant, nonzero

    Vec2 position() const { return {x, y}; }
};

// Oriented start/goal anchor for two-arc trajectory planning.
struct OrientedPose {
    Vec2 position;
    double heading = 0.0;  // rad
};

// Range and line-of-sight angle between two agents. The LOS angle is the
// direction of (observed - observer) measured from the +x axis, in (-pi, pi].
// This orientation convention is fixed project-wide.
struct RelativeGeometry {
    double range = 0.0;  // m
    double los = 0.0;    // rad
};

// Reduce an angle to (-pi, pi], preserving its value mod 2*pi.
// Throws DegenerateGeometry on non-finite input.
double wrap_angle(double theta);

// Distance and LOS angle from agent i to agent j.
// Throws DegenerateGeometry when the positions coincide (LOS undefined).
RelativeGeometry relative_geometry(const AgentState& i, const AgentState& j);

// Closed-form time derivatives of the relative polar geometry:
//   d(range)/dt = v_j cos(g_j - los) - v_i cos(g_i - los)
//   d(los)/dt   = [v_j sin(g_j - los) - v_i sin(g_i - los)] / range
// Returns {range_rate, los_rate}. Throws DegenerateGeometry at zero range.
std::pair<double, double> polar_rates(const AgentState& i, const AgentState& j);

// Exact propagation of a unicycle under a constant turn rate for dt seconds
// (circular arc, or straight line when the rate is zero). Numerically stable
// for arbitrarily small turn rates.
AgentState advance_arc(const AgentState& s, double turn_rate, double dt);

}  // namespace circumnav
