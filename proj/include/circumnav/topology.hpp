#pragma once

#include <utility>
#include <vector>

#include "circumnav/geometry.hpp"

namespace circumnav {

// Who can sense whom. edges holds ordered pairs (i, j): agent i can sense
// agent j. Indices are 0-based positions into the scenario's agent list;
// user-facing ids are mapped at the config layer.
struct SensingGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

// Directed measurement/communication structure over n agents.
// neighbor[i] is the agent that agent i ranges against and listens to, or -1
// when agent i is a leader and follows its own reference trajectory instead.
// A valid graph is a forest of in-trees rooted at the leaders: every follower
// reaches a leader by iterating neighbor[], and no cycle exists.
struct CommGraph {
    std::vector<int> neighbor;

    int size() const { return static_cast<int>(neighbor.size()); }
    bool is_leader(int i) const { return neighbor[static_cast<size_t>(i)] < 0; }
};

// Per-follower reachability facts produced by validate_paths_to_leader.
struct PathValidation {
    std::vector<int> terminal_leader;  // leader each agent's chain ends at
    std::vector<int> depth;            // hops to that leader, 0 for leaders
};

// Each follower picks the nearest agent it can sense (Euclidean distance,
// ties broken toward the lowest index); leaders pick nobody.
// Throws AssumptionViolation when a follower senses no one, and
// DegenerateGeometry when a follower's chosen neighbor sits at zero range.
CommGraph build_comm_graph(const SensingGraph& sensing,
                           const std::vector<Vec2>& positions,
                           const std::vector<bool>& is_leader);

// Build a CommGraph after checking structural invariants:
//   - at least one agent, at least one leader
//   - neighbor indices in [-1, n)
//   - no self-loops
//   - no directed cycles (every chain terminates at a leader)
// Throws AssumptionViolation; for a cycle the offending index sequence is
// attached to the exception.
CommGraph validate_topology(const std::vector<int>& neighbor);

// Full reachability check: every chain of out-neighbors must terminate at a
// leader. Returns the terminal leader and hop count per agent; throws
// AssumptionViolation (with the cycle attached) when follower chains loop.
PathValidation validate_paths_to_leader(const CommGraph& g);

// Index of the leader each agent ultimately follows (a leader maps to itself).
std::vector<int> root_of(const CommGraph& g);

// Hop count to the root leader (0 for leaders).
std::vector<int> depth_of(const CommGraph& g);

// Agents grouped by their root leader. Each group starts with the leader and
// lists followers in nondecreasing depth; groups are ordered by leader index.
std::vector<std::vector<int>> components(const CommGraph& g);

}  // namespace circumnav
