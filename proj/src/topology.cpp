#include "circumnav/topology.hpp"

#include <algorithm>
#include <string>

#include "circumnav/errors.hpp"

namespace circumnav {

CommGraph build_comm_graph(const SensingGraph& sensing,
                           const std::vector<Vec2>& positions,
                           const std::vector<bool>& is_leader) {
    const int n = sensing.n;
    if (n <= 0 || static_cast<int>(positions.size()) != n ||
        static_cast<int>(is_leader.size()) != n) {
        throw AssumptionViolation("build_comm_graph: inconsistent sizes");
    }
    std::vector<std::vector<int>> sensed(static_cast<size_t>(n));
    for (auto [i, j] : sensing.edges) {
        if (i < 0 || i >= n || j < 0 || j >= n) {
            throw AssumptionViolation("build_comm_graph: sensing edge out of range (" +
                                      std::to_string(i) + ", " + std::to_string(j) + ")");
        }
        if (i == j) {
            throw AssumptionViolation("build_comm_graph: sensing self-loop at " +
                                      std::to_string(i));
        }
        sensed[static_cast<size_t>(i)].push_back(j);
    }

    std::vector<int> neighbor(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (is_leader[static_cast<size_t>(i)]) continue;
        int best = -1;
        double best_d = 0.0;
        // Candidates scanned in ascending index, strict < keeps the lowest
        // index on ties.
        std::vector<int> cand = sensed[static_cast<size_t>(i)];
        std::sort(cand.begin(), cand.end());
        for (int j : cand) {
            const double d =
                distance(positions[static_cast<size_t>(i)], positions[static_cast<size_t>(j)]);
            if (best < 0 || d < best_d) {
                best = j;
                best_d = d;
            }
        }
        if (best < 0) {
            throw AssumptionViolation("build_comm_graph: follower " + std::to_string(i) +
                                      " senses no one");
        }
        if (best_d == 0.0) {
            throw DegenerateGeometry("build_comm_graph: follower " + std::to_string(i) +
                                     " coincides with its nearest sensed agent " +
                                     std::to_string(best));
        }
        neighbor[static_cast<size_t>(i)] = best;
    }
    return validate_topology(neighbor);
}

CommGraph validate_topology(const std::vector<int>& neighbor) {
    const int n = static_cast<int>(neighbor.size());
    if (n == 0) {
        throw AssumptionViolation("topology: no agents");
    }
    bool any_leader = false;
    for (int i = 0; i < n; ++i) {
        const int t = neighbor[static_cast<size_t>(i)];
        if (t < -1 || t >= n) {
            throw AssumptionViolation("topology: agent " + std::to_string(i) +
                                      " names out-of-range neighbor " + std::to_string(t));
        }
        if (t == i) {
            throw AssumptionViolation("topology: agent " + std::to_string(i) +
                                      " names itself as neighbor");
        }
        if (t < 0) any_leader = true;
    }
    if (!any_leader) {
        throw AssumptionViolation("topology: no leader (every agent has a neighbor)");
    }

    // Walk each chain with path marking: 0 unvisited, 1 on current path,
    // 2 known to reach a leader.
    std::vector<int> mark(static_cast<size_t>(n), 0);
    for (int start = 0; start < n; ++start) {
        if (mark[static_cast<size_t>(start)] != 0) continue;
        std::vector<int> path;
        int cur = start;
        while (cur >= 0 && mark[static_cast<size_t>(cur)] == 0) {
            mark[static_cast<size_t>(cur)] = 1;
            path.push_back(cur);
            cur = neighbor[static_cast<size_t>(cur)];
        }
        if (cur >= 0 && mark[static_cast<size_t>(cur)] == 1) {
            // Closed loop: report it starting from its first member.
            auto it = std::find(path.begin(), path.end(), cur);
            std::vector<int> cycle(it, path.end());
            std::string msg = "topology: cycle";
            for (int v : cycle) msg += " " + std::to_string(v);
            throw AssumptionViolation(msg, std::move(cycle));
        }
        for (int v : path) mark[static_cast<size_t>(v)] = 2;
    }
    return CommGraph{neighbor};
}

PathValidation validate_paths_to_leader(const CommGraph& g) {
    // validate_topology already ran for graphs built in this module; re-walk
    // defensively so hand-assembled CommGraphs get the same cycle guarantee.
    validate_topology(g.neighbor);
    return PathValidation{root_of(g), depth_of(g)};
}

std::vector<int> root_of(const CommGraph& g) {
    const int n = g.size();
    std::vector<int> root(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (root[static_cast<size_t>(i)] >= 0) continue;
        std::vector<int> path;
        int cur = i;
        while (g.neighbor[static_cast<size_t>(cur)] >= 0 && root[static_cast<size_t>(cur)] < 0) {
            path.push_back(cur);
            cur = g.neighbor[static_cast<size_t>(cur)];
        }
        const int r = root[static_cast<size_t>(cur)] >= 0 ? root[static_cast<size_t>(cur)] : cur;
        root[static_cast<size_t>(cur)] = r;
        for (int v : path) root[static_cast<size_t>(v)] = r;
    }
    return root;
}

std::vector<int> depth_of(const CommGraph& g) {
    const int n = g.size();
    std::vector<int> depth(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (depth[static_cast<size_t>(i)] >= 0) continue;
        std::vector<int> path;
        int cur = i;
        while (g.neighbor[static_cast<size_t>(cur)] >= 0 && depth[static_cast<size_t>(cur)] < 0) {
            path.push_back(cur);
            cur = g.neighbor[static_cast<size_t>(cur)];
        }
        int d = depth[static_cast<size_t>(cur)] >= 0 ? depth[static_cast<size_t>(cur)] : 0;
        depth[static_cast<size_t>(cur)] = d;
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            depth[static_cast<size_t>(*it)] = ++d;
        }
    }
    return depth;
}

std::vector<std::vector<int>> components(const CommGraph& g) {
    const std::vector<int> root = root_of(g);
    const std::vector<int> depth = depth_of(g);
    const int n = g.size();

    std::vector<int> leaders;
    for (int i = 0; i < n; ++i) {
        if (g.is_leader(i)) leaders.push_back(i);
    }

    std::vector<std::vector<int>> groups;
    groups.reserve(leaders.size());
    for (int lead : leaders) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i) {
            if (root[static_cast<size_t>(i)] == lead) members.push_back(i);
        }
        std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
            return depth[static_cast<size_t>(a)] < depth[static_cast<size_t>(b)];
        });
        groups.push_back(std::move(members));
    }
    return groups;
}

}  // namespace circumnav
