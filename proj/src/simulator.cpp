#include "circumnav/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "circumnav/errors.hpp"

namespace circumnav {

std::vector<std::string> validate_scenario(const Scenario& s) {
    if (!(s.dt > 0.0) || !std::isfinite(s.dt)) {
        throw ConfigError("scenario: dt must be finite and > 0");
    }
    if (!(s.t_end > 0.0) || !std::isfinite(s.t_end)) {
        throw ConfigError("scenario: t_end must be finite and > 0");
    }
    validate_gains(s.gains);

    const size_t n = s.agents.size();
    if (n == 0) {
        throw ConfigError("scenario: no agents");
    }
    if (s.ids.size() != n || s.programs.size() != n ||
        s.graph.neighbor.size() != n) {
        throw ConfigError("scenario: agents/ids/programs/graph sizes disagree");
    }
    for (size_t i = 0; i < n; ++i) {
        const AgentState& a = s.agents[i];
        if (!(a.v > 0.0) || !std::isfinite(a.v)) {
            throw ConfigError("scenario: agent " + std::to_string(s.ids[i]) +
                              " speed must be finite and > 0");
        }
        if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(a.gamma)) {
            throw ConfigError("scenario: agent " + std::to_string(s.ids[i]) +
                              " initial state not finite");
        }
    }

    validate_paths_to_leader(s.graph);

    // Per-leader step resolution: a leader tracing its tightest planned arc
    // should advance by at most 1% of that radius per step.
    double worst_step = 0.0;
    double worst_radius = std::numeric_limits<double>::infinity();
    int worst_id = -1;
    for (size_t i = 0; i < n; ++i) {
        const bool leader = s.graph.is_leader(static_cast<int>(i));
        if (leader != s.programs[i].has_value()) {
            throw ConfigError("scenario: agent " + std::to_string(s.ids[i]) +
                              (leader ? " is a leader without a motion program"
                                      : " is a follower with a motion program"));
        }
        if (!leader) continue;
        const LeaderProgram& prog = *s.programs[i];
        double min_radius = prog.orbit.radius;
        const double expect = s.agents[i].v / prog.orbit.radius;
        if (std::abs(std::abs(prog.orbit.omega) - expect) > 1e-9 * expect) {
            throw ConfigError("scenario: leader " + std::to_string(s.ids[i]) +
                              " orbit omega inconsistent with speed/radius");
        }
        if (prog.plan) {
            if (std::abs(prog.plan->speed - s.agents[i].v) > 1e-12 * s.agents[i].v) {
                throw ConfigError("scenario: leader " + std::to_string(s.ids[i]) +
                                  " plan speed differs from agent speed");
            }
            min_radius = std::min({min_radius, std::abs(prog.plan->r_a),
                                   std::abs(prog.plan->r_b)});
        }
        const double step = s.agents[i].v * s.dt;
        if (step * worst_radius > worst_step * min_radius) {
            worst_step = step;
            worst_radius = min_radius;
            worst_id = s.ids[i];
        }
    }
    std::vector<std::string> warnings;
    if (worst_id >= 0 && worst_step > 0.01 * worst_radius) {
        warnings.push_back("dt = " + std::to_string(s.dt) + " s is coarse: leader " +
                           std::to_string(worst_id) + " moves " +
                           std::to_string(worst_step) +
                           " m per step, more than 1% of its smallest planned radius " +
                           std::to_string(worst_radius) + " m");
    }
    return warnings;
}

std::vector<double> compute_controls(const Scenario& s,
                                     const std::vector<AgentState>& states, double t) {
    const size_t n = states.size();
    std::vector<double> u(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        if (s.graph.is_leader(static_cast<int>(i))) {
            const LeaderProgram& prog = *s.programs[i];
            u[i] = leader_control(prog.plan, prog.orbit, states[i], t);
        } else {
            const int j = s.graph.neighbor[i];
            u[i] = follower_control(s.gains, states[i], states[static_cast<size_t>(j)],
                                    s.heading_mode);
        }
    }
    return u;
}

namespace {

// Classical RK4 on (x, y, gamma) with the control held constant.
AgentState advance_one(const AgentState& a, double u, double dt) {
    AgentState next = a;
    const double g1 = a.gamma;
    const double g2 = a.gamma + 0.5 * dt * u;
    const double g3 = a.gamma + 0.5 * dt * u;
    const double g4 = a.gamma + dt * u;
    next.x = a.x + a.v * dt / 6.0 *
                       (std::cos(g1) + 2.0 * std::cos(g2) + 2.0 * std::cos(g3) +
                        std::cos(g4));
    next.y = a.y + a.v * dt / 6.0 *
                       (std::sin(g1) + 2.0 * std::sin(g2) + 2.0 * std::sin(g3) +
                        std::sin(g4));
    next.gamma = a.gamma + dt * u;
    return next;
}

// A leader's feedforward is piecewise constant in time with breakpoints at the
// plan's arc switch and completion. Splitting the step there keeps the traced
// circles concentric with the target instead of dragging an O(dt) offset
// through every later sample.
AgentState advance_leader_exact(const LeaderProgram& prog, const AgentState& a,
                                double t, double dt) {
    double cuts[2];
    size_t ncuts = 0;
    if (prog.plan) {
        for (double b : {prog.plan->switch_time, prog.plan->total_time}) {
            if (t < b && b < t + dt && (ncuts == 0 || b > cuts[ncuts - 1])) {
                cuts[ncuts++] = b;
            }
        }
    }
    if (ncuts == 0) {
        return advance_one(a, leader_control(prog.plan, prog.orbit, a, t), dt);
    }
    AgentState cur = a;
    double at = t;
    for (size_t c = 0; c < ncuts; ++c) {
        cur = advance_one(cur, leader_control(prog.plan, prog.orbit, cur, at), cuts[c] - at);
        at = cuts[c];
    }
    return advance_one(cur, leader_control(prog.plan, prog.orbit, cur, at), t + dt - at);
}

std::vector<AgentState> advance_scenario(const Scenario& s,
                                         const std::vector<AgentState>& states,
                                         const std::vector<double>& controls, double t,
                                         double dt) {
    std::vector<AgentState> next = states;
    for (size_t i = 0; i < states.size(); ++i) {
        next[i] = s.graph.is_leader(static_cast<int>(i))
                      ? advance_leader_exact(*s.programs[i], states[i], t, dt)
                      : advance_one(states[i], controls[i], dt);
        if (!std::isfinite(next[i].x) || !std::isfinite(next[i].y) ||
            !std::isfinite(next[i].gamma)) {
            throw DivergenceError("agent " + std::to_string(i) + " state not finite", t + dt);
        }
    }
    return next;
}

}  // namespace

std::vector<AgentState> advance(const std::vector<AgentState>& states,
                                const std::vector<double>& controls, double t,
                                double dt) {
    std::vector<AgentState> next = states;
    for (size_t i = 0; i < states.size(); ++i) {
        next[i] = advance_one(states[i], controls[i], dt);
        if (!std::isfinite(next[i].x) || !std::isfinite(next[i].y) ||
            !std::isfinite(next[i].gamma)) {
            throw DivergenceError("agent " + std::to_string(i) + " state not finite", t + dt);
        }
    }
    return next;
}

std::vector<AgentState> step(const Scenario& s, const std::vector<AgentState>& states,
                             double t, double dt) {
    return advance_scenario(s, states, compute_controls(s, states, t), t, dt);
}

SimLog run(const Scenario& s) {
    const size_t n = s.agents.size();
    const long steps = std::lround(s.t_end / s.dt);

    SimLog log;
    log.t.reserve(static_cast<size_t>(steps) + 1);
    auto reserve_all = [&](std::vector<std::vector<double>>& v) {
        v.assign(n, {});
        for (auto& series : v) series.reserve(static_cast<size_t>(steps) + 1);
    };
    reserve_all(log.x);
    reserve_all(log.y);
    reserve_all(log.gamma);
    reserve_all(log.u);
    reserve_all(log.r_target);
    reserve_all(log.r_edge);
    reserve_all(log.lambda_edge);

    std::vector<AgentState> states = s.agents;
    for (long k = 0; k <= steps; ++k) {
        const double t = s.dt * static_cast<double>(k);
        const std::vector<double> u = compute_controls(s, states, t);

        log.t.push_back(t);
        for (size_t i = 0; i < n; ++i) {
            log.x[i].push_back(states[i].x);
            log.y[i].push_back(states[i].y);
            log.gamma[i].push_back(states[i].gamma);
            log.u[i].push_back(u[i]);
            log.r_target[i].push_back(distance(states[i].position(), s.target));
            if (!s.graph.is_leader(static_cast<int>(i))) {
                const size_t j = static_cast<size_t>(s.graph.neighbor[i]);
                const RelativeGeometry rel = relative_geometry(states[i], states[j]);
                log.r_edge[i].push_back(rel.range);
                log.lambda_edge[i].push_back(rel.los);
            }
        }
        if (k < steps) {
            states = advance_scenario(s, states, u, t, s.dt);
        }
    }
    return log;
}

}  // namespace circumnav
