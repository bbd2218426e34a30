#include "circumnav/guidance.hpp"

#include <cmath>
#include <string>

#include "circumnav/errors.hpp"

namespace circumnav {

namespace {

double mod_two_pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

double phase_on(Vec2 p, Vec2 center) { return std::atan2(p.y - center.y, p.x - center.x); }

// Unsigned sweep from phase f0 to f1 in the stated direction, in [0, 2*pi).
double sweep_between(double f0, double f1, bool clockwise) {
    return clockwise ? mod_two_pi(f0 - f1) : mod_two_pi(f1 - f0);
}

}  // namespace

void validate_gains(const GuidanceGains& g) {
    if (!(g.c1 > 0.0) || !(g.c2 > 0.0) || !std::isfinite(g.c1) || !std::isfinite(g.c2)) {
        throw ConfigError("gains: c1 and c2 must be finite and > 0 (got c1=" +
                          std::to_string(g.c1) + ", c2=" + std::to_string(g.c2) + ")");
    }
}

double follower_control(const GuidanceGains& gains, const AgentState& self,
                        const AgentState& neighbor, HeadingErrorMode mode) {
    const RelativeGeometry rel = relative_geometry(self, neighbor);
    double dgamma = neighbor.gamma - self.gamma;
    if (mode == HeadingErrorMode::Wrapped) dgamma = wrap_angle(dgamma);
    return gains.c1 * dgamma + gains.c2 * std::sin(rel.los - self.gamma);
}

double follower_control_from_errors(const GuidanceGains& gains, const ErrorState& e,
                                    HeadingErrorMode mode) {
    const double e1 = mode == HeadingErrorMode::Wrapped ? wrap_angle(e.e1) : e.e1;
    return gains.c1 * e1 + gains.c2 * std::sin(e.e2);
}

CCCoefficients cc_coefficients(const OrientedPose& start, const OrientedPose& goal) {
    const double alpha = start.heading;
    const double beta = goal.heading;
    const double den = 1.0 - std::cos(alpha - beta);
    if (!(den > 1e-12)) {
        throw PlanningError("cc: start and goal headings equal mod 2*pi, transfer undefined");
    }
    // Work with the goal at the origin; the coefficients only combine the
    // offset with the two headings, so no rotation is needed.
    const Vec2 a = start.position - goal.position;
    const double p1 = (a.x * std::sin(beta) - a.y * std::cos(beta)) / den;
    const double p2 = (a.x * std::sin(alpha) - a.y * std::cos(alpha)) / den;
    const double mid = 0.5 * (alpha + beta);
    const double m = (a.x * std::sin(mid) - a.y * std::cos(mid)) / den;
    return {p1, p2, m * m};
}

CCPlan plan_cc(const OrientedPose& start, const OrientedPose& goal, double r_a, double speed) {
    if (!(speed > 0.0) || !std::isfinite(speed)) {
        throw PlanningError("cc: speed must be finite and > 0");
    }
    if (r_a == 0.0 || !std::isfinite(r_a)) {
        throw PlanningError("cc: first radius must be finite and nonzero");
    }
    const CCCoefficients c = cc_coefficients(start, goal);
    if (std::abs(r_a - c.p1) < 1e-12 * std::max(1.0, std::abs(c.p1))) {
        throw PlanningError("cc: r_a = p1 = " + std::to_string(c.p1) +
                            ", second radius unbounded");
    }
    const double r_b = c.p3 / (r_a - c.p1) + c.p2;
    if (!std::isfinite(r_b)) {
        throw PlanningError("cc: non-finite second radius");
    }
    if (std::abs(r_b) < 1e-12) {
        throw PlanningError("cc: second radius degenerates to a point");
    }

    CCPlan plan;
    plan.start = start;
    plan.goal = goal;
    plan.speed = speed;
    plan.r_a = r_a;
    plan.r_b = r_b;
    plan.center_a = start.position +
                    r_a * Vec2{std::sin(start.heading), -std::cos(start.heading)};
    plan.center_b = goal.position +
                    r_b * Vec2{-std::sin(goal.heading), std::cos(goal.heading)};

    const bool cw_a = r_a > 0.0;   // center on the right of the heading
    const bool ccw_b = r_b > 0.0;  // center on the left of the heading

    const double radius_sum = r_a + r_b;
    double sweep_a = 0.0;
    double sweep_b = 0.0;
    if (std::abs(radius_sum) < 1e-9 * std::max({1.0, std::abs(r_a), std::abs(r_b)})) {
        // The two circles coincide (identical center and radius, traversed in
        // the same direction): the whole transfer lives on circle A.
        plan.tangent = goal.position;
        sweep_a = sweep_between(phase_on(start.position, plan.center_a),
                                phase_on(goal.position, plan.center_a), cw_a);
        if (distance(start.position, goal.position) <
            1e-9 * std::max(1.0, std::abs(r_a))) {
            sweep_a = 0.0;
        }
    } else {
        plan.tangent = plan.center_a + (r_a / radius_sum) * (plan.center_b - plan.center_a);
        sweep_a = sweep_between(phase_on(start.position, plan.center_a),
                                phase_on(plan.tangent, plan.center_a), cw_a);
        sweep_b = sweep_between(phase_on(plan.tangent, plan.center_b),
                                phase_on(goal.position, plan.center_b), !ccw_b);
        // Snap chords below geometric noise to zero so a start already at the
        // tangency point yields a zero-length arc instead of a full lap.
        if (distance(start.position, plan.tangent) < 1e-9 * std::max(1.0, std::abs(r_a))) {
            sweep_a = 0.0;
        }
        if (distance(plan.tangent, goal.position) < 1e-9 * std::max(1.0, std::abs(r_b))) {
            sweep_b = 0.0;
        }
    }

    plan.arc_a = (cw_a ? -1.0 : 1.0) * sweep_a;
    plan.arc_b = (ccw_b ? 1.0 : -1.0) * sweep_b;
    plan.switch_time = sweep_a * std::abs(r_a) / speed;
    plan.total_time = plan.switch_time + sweep_b * std::abs(r_b) / speed;

    if (!std::isfinite(plan.total_time) || !std::isfinite(plan.tangent.x) ||
        !std::isfinite(plan.tangent.y)) {
        throw PlanningError("cc: non-finite plan");
    }
    return plan;
}

void require_min_radius(const CCPlan& plan, double r_min) {
    if (r_min <= 0.0) return;
    if (std::abs(plan.r_a) < r_min || std::abs(plan.r_b) < r_min) {
        throw PlanningError("cc: arc radius below minimum turning radius " +
                            std::to_string(r_min) + " (|r_a|=" +
                            std::to_string(std::abs(plan.r_a)) + ", |r_b|=" +
                            std::to_string(std::abs(plan.r_b)) + ")");
    }
}

OrbitSpec make_orbit(Vec2 center, double radius, Direction direction, double v) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw ConfigError("orbit: radius must be finite and > 0");
    }
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError("orbit: speed must be finite and > 0");
    }
    OrbitSpec o;
    o.center = center;
    o.radius = radius;
    o.direction = direction;
    o.omega = (direction == Direction::CounterClockwise ? 1.0 : -1.0) * v / radius;
    return o;
}

OrientedPose orbit_pose(const OrbitSpec& orbit, double phi) {
    OrientedPose pose;
    pose.position = orbit.center + orbit.radius * Vec2{std::cos(phi), std::sin(phi)};
    const double offset = orbit.direction == Direction::CounterClockwise ? kPi / 2 : -kPi / 2;
    pose.heading = wrap_angle(phi + offset);
    return pose;
}

double leader_control(const std::optional<CCPlan>& plan, const OrbitSpec& orbit,
                      const AgentState& state, double t) {
    if (plan && t < plan->switch_time) return -state.v / plan->r_a;
    if (plan && t < plan->total_time) return state.v / plan->r_b;
    return orbit.omega;
}

}  // namespace circumnav
