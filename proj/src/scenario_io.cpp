#include "circumnav/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "circumnav/errors.hpp"

namespace circumnav {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw ConfigError(origin + ": " + what);
}

json parse_override_value(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception&) {
        return json(text);  // bare words become strings
    }
}

void apply_override(json& root, const std::string& spec, const std::string& origin) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
        fail(origin, "override must look like key.path=value, got '" + spec + "'");
    }
    std::string ptr = "/" + spec.substr(0, eq);
    std::replace(ptr.begin(), ptr.end(), '.', '/');
    try {
        root[json::json_pointer(ptr)] = parse_override_value(spec.substr(eq + 1));
    } catch (const json::exception& e) {
        fail(origin, "cannot apply override '" + spec + "': " + e.what());
    }
}

double number_at(const json& j, const std::string& key, const std::string& origin) {
    if (!j.contains(key)) fail(origin, "missing required field '" + key + "'");
    if (!j[key].is_number()) fail(origin, "field '" + key + "' must be a number");
    return j[key].get<double>();
}

Direction direction_from(const std::string& text, const std::string& origin) {
    if (text == "ccw" || text == "counterclockwise") return Direction::CounterClockwise;
    if (text == "cw" || text == "clockwise") return Direction::Clockwise;
    fail(origin, "direction must be ccw|counterclockwise|cw|clockwise, got '" + text + "'");
}

Vec2 vec2_from(const json& j, const std::string& origin, const std::string& what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        fail(origin, what + " must be a 2-element number array [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Scenario parse_scenario(const std::string& json_text, const std::string& origin,
                        const std::vector<std::string>& overrides,
                        std::vector<std::string>* warnings) {
    json root;
    try {
        root = json::parse(json_text, nullptr, /*allow_exceptions=*/true,
                           /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        fail(origin, std::string("parse error: ") + e.what());
    }
    for (const std::string& spec : overrides) {
        apply_override(root, spec, origin);
    }
    if (!root.is_object()) fail(origin, "top level must be an object");

    Scenario s;
    s.name = root.value("name", std::string("scenario"));
    if (root.contains("target")) s.target = vec2_from(root["target"], origin, "target");
    s.dt = root.value("dt", 0.01);
    s.t_end = root.value("t_end", 100.0);
    if (root.contains("gains")) {
        s.gains.c1 = number_at(root["gains"], "c1", origin + " gains");
        s.gains.c2 = number_at(root["gains"], "c2", origin + " gains");
    }
    s.heading_mode = root.value("unwrapped_heading_error", false)
                         ? HeadingErrorMode::Unwrapped
                         : HeadingErrorMode::Wrapped;
    if (root.contains("settling")) {
        const json& j = root["settling"];
        s.settling.window = j.value("window", s.settling.window);
        s.settling.rel_tol = j.value("rel_tol", s.settling.rel_tol);
        s.settling.rate_sync_tol = j.value("rate_sync_tol", s.settling.rate_sync_tol);
    }
    s.min_turn_radius = root.value("min_turn_radius", 0.0);

    if (!root.contains("agents") || !root["agents"].is_array() || root["agents"].empty()) {
        fail(origin, "'agents' must be a nonempty array");
    }

    struct RawAgent {
        int id = 0;
        json orbit;
        json transfer;
        int neighbor_id = 0;
        bool has_neighbor = false;
    };
    std::vector<RawAgent> raw;
    std::map<int, int> index_of_id;
    for (const json& ja : root["agents"]) {
        const std::string where = origin + " agent #" + std::to_string(raw.size());
        RawAgent ra;
        if (!ja.contains("id") || !ja["id"].is_number_integer()) {
            fail(where, "missing integer 'id'");
        }
        ra.id = ja["id"].get<int>();
        if (index_of_id.count(ra.id)) {
            fail(where, "duplicate id " + std::to_string(ra.id));
        }
        if (!ja.contains("start") || !ja["start"].is_array() || ja["start"].size() != 3) {
            fail(where, "'start' must be [x, y, heading]");
        }
        AgentState st;
        st.x = ja["start"][0].get<double>();
        st.y = ja["start"][1].get<double>();
        st.gamma = ja["start"][2].get<double>();
        st.v = number_at(ja, "speed", where);

        if (ja.contains("orbit")) ra.orbit = ja["orbit"];
        if (ja.contains("transfer")) ra.transfer = ja["transfer"];
        if (ja.contains("neighbor")) {
            if (!ja["neighbor"].is_number_integer()) fail(where, "'neighbor' must be an id");
            ra.neighbor_id = ja["neighbor"].get<int>();
            ra.has_neighbor = true;
        }
        if (!ra.orbit.is_null() && ra.has_neighbor) {
            fail(where, "an agent cannot have both an orbit (leader) and a neighbor");
        }
        if (!ra.transfer.is_null() && ra.orbit.is_null()) {
            fail(where, "'transfer' requires an 'orbit' block");
        }

        index_of_id[ra.id] = static_cast<int>(raw.size());
        raw.push_back(std::move(ra));
        s.agents.push_back(st);
        s.ids.push_back(raw.back().id);
    }
    const int n = static_cast<int>(raw.size());

    // Topology: every follower either names its neighbor explicitly, or all
    // followers are resolved at once from the sensing rule.
    bool any_explicit = false;
    bool any_implicit = false;
    for (const RawAgent& ra : raw) {
        if (!ra.orbit.is_null()) continue;
        (ra.has_neighbor ? any_explicit : any_implicit) = true;
    }
    if (any_explicit && any_implicit) {
        fail(origin, "mix of explicit 'neighbor' fields and sensing-derived followers");
    }
    if (any_implicit) {
        if (!root.contains("sensing")) {
            fail(origin, "followers without 'neighbor' need a top-level 'sensing' block");
        }
        const json& js = root["sensing"];
        SensingGraph sensing;
        sensing.n = n;
        if (js.contains("edges")) {
            for (const json& je : js["edges"]) {
                if (!je.is_array() || je.size() != 2) {
                    fail(origin, "sensing edges must be [from_id, to_id] pairs");
                }
                const int a = je[0].get<int>();
                const int b = je[1].get<int>();
                if (!index_of_id.count(a) || !index_of_id.count(b)) {
                    fail(origin, "sensing edge names unknown id");
                }
                sensing.edges.emplace_back(index_of_id[a], index_of_id[b]);
            }
        } else if (js.contains("radius")) {
            const double rad = js["radius"].get<double>();
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    if (distance(s.agents[static_cast<size_t>(i)].position(),
                                 s.agents[static_cast<size_t>(j)].position()) <= rad) {
                        sensing.edges.emplace_back(i, j);
                    }
                }
            }
        } else {
            fail(origin, "'sensing' needs 'edges' or 'radius'");
        }
        std::vector<Vec2> positions;
        std::vector<bool> is_leader;
        for (int i = 0; i < n; ++i) {
            positions.push_back(s.agents[static_cast<size_t>(i)].position());
            is_leader.push_back(!raw[static_cast<size_t>(i)].orbit.is_null());
        }
        s.graph = build_comm_graph(sensing, positions, is_leader);
    } else {
        std::vector<int> neighbor(static_cast<size_t>(n), -1);
        for (int i = 0; i < n; ++i) {
            const RawAgent& ra = raw[static_cast<size_t>(i)];
            if (!ra.has_neighbor) continue;
            if (!index_of_id.count(ra.neighbor_id)) {
                fail(origin, "agent " + std::to_string(ra.id) + " names unknown neighbor id " +
                                 std::to_string(ra.neighbor_id));
            }
            neighbor[static_cast<size_t>(i)] = index_of_id[ra.neighbor_id];
        }
        s.graph = validate_topology(neighbor);
    }

    // Leader motion programs.
    s.programs.assign(static_cast<size_t>(n), std::nullopt);
    for (int i = 0; i < n; ++i) {
        const RawAgent& ra = raw[static_cast<size_t>(i)];
        if (ra.orbit.is_null()) continue;
        const std::string where = origin + " agent " + std::to_string(ra.id);
        const double radius = number_at(ra.orbit, "radius", where + " orbit");
        if (!ra.orbit.contains("direction") || !ra.orbit["direction"].is_string()) {
            fail(where, "orbit needs a 'direction' string");
        }
        const Direction dir =
            direction_from(ra.orbit["direction"].get<std::string>(), where);
        const AgentState& st = s.agents[static_cast<size_t>(i)];
        LeaderProgram prog;
        prog.orbit = make_orbit(s.target, radius, dir, st.v);

        if (!ra.transfer.is_null()) {
            const double r_a = number_at(ra.transfer, "r_a", where + " transfer");
            const double boarding =
                number_at(ra.transfer, "boarding_angle", where + " transfer");
            const OrientedPose start{st.position(), st.gamma};
            const OrientedPose goal = orbit_pose(prog.orbit, boarding);
            prog.plan = plan_cc(start, goal, r_a, st.v);
            require_min_radius(*prog.plan, s.min_turn_radius);
        } else {
            // Hold mode claims the leader is already on its orbit; verify
            // instead of silently drifting.
            const double off = std::abs(distance(st.position(), s.target) - radius);
            if (off > 1e-6 * std::max(1.0, radius)) {
                fail(where, "hold-mode leader is " + std::to_string(off) +
                                " m off its orbit; add a 'transfer' block");
            }
            const double phi =
                std::atan2(st.y - s.target.y, st.x - s.target.x);
            const double want = orbit_pose(prog.orbit, phi).heading;
            if (std::abs(wrap_angle(st.gamma - want)) > 1e-6) {
                fail(where, "hold-mode leader heading is not tangent to its orbit");
            }
        }
        s.programs[static_cast<size_t>(i)] = std::move(prog);
    }

    std::vector<std::string> local = validate_scenario(s);
    if (warnings) {
        warnings->insert(warnings->end(), local.begin(), local.end());
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path,
                       const std::vector<std::string>& overrides,
                       std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open scenario config " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    Scenario s = parse_scenario(buf.str(), path.filename().string(), overrides, warnings);
    if (s.name == "scenario") {
        s.name = path.stem().string();
    }
    return s;
}

}  // namespace circumnav
