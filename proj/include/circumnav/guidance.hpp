#pragma once

#include <optional>

#include "circumnav/geometry.hpp"

namespace circumnav {

// Proportional gains of the follower turn-rate law
//   u_i = c1 * (gamma_j - gamma_i) + c2 * sin(lambda_ij - gamma_i).
// Both must be strictly positive.
struct GuidanceGains {
    double c1 = 1.0;  // 1/s, heading-alignment gain
    double c2 = 1.0;  // rad/s, bearing gain
};

// Throws ConfigError unless both gains are strictly positive and finite.
void validate_gains(const GuidanceGains& g);

// How the heading-alignment term treats the difference gamma_j - gamma_i.
// Wrapped reduces it to (-pi, pi] (implementable from compass readings);
// Unwrapped consumes the raw difference of continuous headings, which is what
// the planar error analysis assumes. Wrapped is the project default.
enum class HeadingErrorMode { Wrapped, Unwrapped };

// Follower error coordinates relative to its neighbor:
//   e1 = gamma_j - gamma_i, e2 = lambda_ij - gamma_i.
struct ErrorState {
    double e1 = 0.0;  // rad
    double e2 = 0.0;  // rad, enters the dynamics only through sin
};

// Turn rate commanded to a follower. Throws DegenerateGeometry when the two
// positions coincide (bearing undefined).
double follower_control(const GuidanceGains& gains, const AgentState& self,
                        const AgentState& neighbor,
                        HeadingErrorMode mode = HeadingErrorMode::Wrapped);

// Same law expressed directly on error coordinates (used by the reduced-order
// analysis, where no agent states exist).
double follower_control_from_errors(const GuidanceGains& gains, const ErrorState& e,
                                    HeadingErrorMode mode = HeadingErrorMode::Wrapped);

// Coefficients of the hyperbolic relation (r_b - p2)(r_a - p1) = p3 linking
// the two signed radii of a circle-circle transfer between oriented poses.
struct CCCoefficients {
    double p1 = 0.0;  // m
    double p2 = 0.0;  // m
    double p3 = 0.0;  // m^2, nonnegative
};

// Two-arc transfer: a circle tangent to the start pose, externally or
// internally tangent to a second circle that is tangent to the goal pose.
//
// Sign conventions, fixed project-wide:
//   center_a = start + r_a * (sin(alpha), -cos(alpha))   (right of heading for r_a > 0)
//   center_b = goal  + r_b * (-sin(beta),  cos(beta))    (left of heading for r_b > 0)
// which makes the first arc clockwise for r_a > 0 (turn rate -v/r_a) and the
// second counterclockwise for r_b > 0 (turn rate +v/r_b). Tangency always
// reads |center_a - center_b| = |r_a + r_b| in these signed radii.
struct CCPlan {
    OrientedPose start;
    OrientedPose goal;
    double speed = 0.0;     // m/s used to convert arc length to time
    double r_a = 0.0;       // m, signed
    double r_b = 0.0;       // m, signed
    Vec2 center_a;
    Vec2 center_b;
    Vec2 tangent;           // switch point shared by both circles
    double arc_a = 0.0;     // rad, signed heading change on the first arc
    double arc_b = 0.0;     // rad, signed heading change on the second arc
    double switch_time = 0.0;  // s
    double total_time = 0.0;   // s
};

// p1, p2, p3 for the given pose pair, computed with the goal translated to
// the origin. Throws PlanningError when the headings are equal mod 2*pi
// (the shared denominator 1 - cos(alpha - beta) vanishes).
CCCoefficients cc_coefficients(const OrientedPose& start, const OrientedPose& goal);

// Build the full two-arc plan for a chosen signed first radius and speed.
// Throws PlanningError on parallel headings, r_a = p1 (second radius blows
// up), r_a = 0, a vanishing second radius, or non-finite output.
CCPlan plan_cc(const OrientedPose& start, const OrientedPose& goal, double r_a, double speed);

// Throws PlanningError when either arc of the plan is tighter than r_min.
void require_min_radius(const CCPlan& plan, double r_min);

enum class Direction { CounterClockwise, Clockwise };

// Target circle a leader holds after its transfer: turn rate omega = +v/R
// counterclockwise, -v/R clockwise.
struct OrbitSpec {
    Vec2 center;
    double radius = 1.0;   // m, > 0
    Direction direction = Direction::CounterClockwise;
    double omega = 0.0;    // rad/s, signed, |omega| = v/radius
};

// Orbit around `center` with the given radius/direction at speed v.
// Throws ConfigError on nonpositive radius or speed.
OrbitSpec make_orbit(Vec2 center, double radius, Direction direction, double v);

// Pose on the orbit at polar angle phi (measured from center), heading along
// the direction of travel. Used to pick the boarding pose for plan_cc.
OrientedPose orbit_pose(const OrbitSpec& orbit, double phi);

// Piecewise-constant leader turn rate: first arc until switch_time, second
// arc until total_time, then exact feedforward orbit hold. With no plan the
// leader holds the orbit from t = 0.
double leader_control(const std::optional<CCPlan>& plan, const OrbitSpec& orbit,
                      const AgentState& state, double t);

}  // namespace circumnav
