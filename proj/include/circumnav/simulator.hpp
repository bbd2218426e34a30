#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circumnav/geometry.hpp"
#include "circumnav/guidance.hpp"
#include "circumnav/topology.hpp"

namespace circumnav {

// Motion program of one leader: an optional two-arc transfer onto the target
// orbit, then exact feedforward hold on that orbit.
struct LeaderProgram {
    std::optional<CCPlan> plan;
    OrbitSpec orbit;
};

// Trailing-window convergence detector configuration (see detect_settling).
struct SettlingParams {
    double window = 5.0;         // s
    double rel_tol = 1e-3;       // peak-to-peak relative to |mean|
    double rate_sync_tol = 1e-3; // rad/s, absolute, for per-component sync
};

// Everything needed to reproduce one run. Agents are indexed 0..n-1
// internally; ids carries the user-facing labels for reports and CSV headers.
struct Scenario {
    std::string name;
    Vec2 target;            // fixed for the whole run
    double dt = 0.01;       // s
    double t_end = 100.0;   // s
    GuidanceGains gains;
    HeadingErrorMode heading_mode = HeadingErrorMode::Wrapped;
    std::vector<AgentState> agents;  // initial states
    std::vector<int> ids;
    CommGraph graph;  // neighbor[i] < 0 iff agent i is a leader
    std::vector<std::optional<LeaderProgram>> programs;  // engaged iff leader
    SettlingParams settling;
    double min_turn_radius = 0.0;  // m, 0 disables the planner check
};

// Checks every cross-field invariant the modules rely on (positive dt/t_end,
// nonzero speeds, valid gains and topology, programs exactly on leaders, plan
// speeds matching agent speeds). Throws ConfigError / AssumptionViolation.
// Returns human-readable warnings (e.g. dt coarse relative to orbit radii).
std::vector<std::string> validate_scenario(const Scenario& s);

// Full time history of one run. All series share the time grid; u holds the
// control actually applied over [t_k, t_k + dt) (the final sample stores the
// control that would be applied next). Edge series are indexed by the
// follower; leaders get empty edge series. lambda_edge is wrapped to
// (-pi, pi] per sample; unwrap downstream when differencing.
struct SimLog {
    std::vector<double> t;
    std::vector<std::vector<double>> x, y, gamma, u, r_target;
    std::vector<std::vector<double>> r_edge, lambda_edge;
};

// Turn rates for all agents at time t from the current states: leaders follow
// their programs, followers apply the bearing law toward their neighbor.
std::vector<double> compute_controls(const Scenario& s,
                                     const std::vector<AgentState>& states, double t);

// One classical fixed-step 4th-order step of every agent under zero-order-
// hold controls. Throws DivergenceError (with timestamp) on non-finite state.
std::vector<AgentState> advance(const std::vector<AgentState>& states,
                                const std::vector<double>& controls, double t,
                                double dt);

// compute_controls + one integration step. Follower controls are zero-order
// held over the step; leader steps are additionally split at plan arc
// boundaries falling inside (t, t+dt) so the feedforward stays arc-exact.
std::vector<AgentState> step(const Scenario& s, const std::vector<AgentState>& states,
                             double t, double dt);

// Integrate the scenario over [0, t_end] and record everything. Deterministic:
// identical scenarios produce bit-identical logs.
SimLog run(const Scenario& s);

}  // namespace circumnav
