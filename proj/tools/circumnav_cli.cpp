#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "circumnav/csv.hpp"
#include "circumnav/errors.hpp"
#include "circumnav/report.hpp"
#include "circumnav/scenario_io.hpp"
#include "circumnav/simulator.hpp"
#include "circumnav/stability.hpp"
#include "circumnav/svg_plot.hpp"
#include "circumnav/topology.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
    std::string config;
    std::string out_dir = ".";
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
    cmd->add_option("--config", opts->config, "Scenario/analysis config file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out-dir", opts->out_dir, "Directory for emitted artifacts");
    cmd->add_option("--set", opts->sets,
                    "Override a config value, dotted path (e.g. --set gains.c1=0.8)");
}

json load_root(const CommonOpts& opts) {
    std::ifstream in(opts.config);
    std::ostringstream buf;
    buf << in.rdbuf();
    json root = json::parse(buf.str(), nullptr, true, /*ignore_comments=*/true);
    for (const std::string& spec : opts.sets) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw circumnav::ConfigError("override must look like key.path=value: " + spec);
        }
        std::string ptr = "/" + spec.substr(0, eq);
        std::replace(ptr.begin(), ptr.end(), '.', '/');
        json value;
        try {
            value = json::parse(spec.substr(eq + 1));
        } catch (const json::exception&) {
            value = spec.substr(eq + 1);
        }
        root[json::json_pointer(ptr)] = value;
    }
    return root;
}

circumnav::Direction direction_from(const std::string& text) {
    if (text == "ccw" || text == "counterclockwise") {
        return circumnav::Direction::CounterClockwise;
    }
    if (text == "cw" || text == "clockwise") {
        return circumnav::Direction::Clockwise;
    }
    throw circumnav::ConfigError("direction must be ccw or cw, got '" + text + "'");
}

circumnav::PairConfig pair_from(const json& root) {
    if (!root.contains("pair")) {
        throw circumnav::ConfigError("config needs a top-level 'pair' block");
    }
    const json& p = root["pair"];
    circumnav::GuidanceGains gains;
    gains.c1 = p.at("gains").at("c1").get<double>();
    gains.c2 = p.at("gains").at("c2").get<double>();
    return circumnav::make_pair_config(p.at("v_i").get<double>(), p.at("v_j").get<double>(),
                                       p.at("R_j").get<double>(),
                                       direction_from(p.value("direction", "ccw")), gains);
}

json equilibrium_json(const circumnav::PairConfig& cfg,
                      const circumnav::EquilibriumSolution& eq) {
    const char* label = "marginal";
    if (eq.stability == circumnav::StabilityClass::AsymptoticallyStable) label = "stable";
    if (eq.stability == circumnav::StabilityClass::Unstable) label = "unstable";
    const double residual = std::abs(cfg.omega - cfg.gains.c1 * eq.e1_bar -
                                     cfg.gains.c2 * std::sin(eq.e2_bar));
    return json{{"e1_bar", eq.e1_bar},
                {"e2_bar", eq.e2_bar},
                {"r_ij_bar", eq.r_ij_bar},
                {"R_i", eq.R_i},
                {"stability", label},
                {"eigenvalues",
                 json::array({json::array({eq.eig1.real(), eq.eig1.imag()}),
                              json::array({eq.eig2.real(), eq.eig2.imag()})})},
                {"steady_condition_residual", residual}};
}

int cmd_run(const CommonOpts& opts) {
    std::vector<std::string> warnings;
    const circumnav::Scenario scenario =
        circumnav::load_scenario(opts.config, opts.sets, &warnings);
    for (const std::string& w : warnings) {
        std::cerr << "warning: " << w << '\n';
    }

    const circumnav::SimLog log = circumnav::run(scenario);
    const circumnav::RunReport report =
        circumnav::summarize(log, scenario.graph, scenario);

    const std::filesystem::path dir(opts.out_dir);
    std::filesystem::create_directories(dir);
    const auto csv_path = dir / (scenario.name + "_log.csv");
    circumnav::emit_csv(log, scenario.ids, csv_path);
    const auto report_path = dir / (scenario.name + "_report.json");
    circumnav::write_report_json(report, report_path);
    circumnav::emit_plots(log, report, scenario, dir);

    std::printf("scenario %s: %zu agents, dt=%g s, t_end=%g s\n", scenario.name.c_str(),
                scenario.agents.size(), scenario.dt, scenario.t_end);
    for (const circumnav::AgentReport& ar : report.agents) {
        std::printf("  agent %d%s: radius %s", ar.id, ar.leader ? " (leader)" : "",
                    ar.radius.settled ? "settled" : "NOT settled");
        if (ar.radius.settled) {
            std::printf(" at %.6g m (t=%.4g s, spread %.3g)", ar.radius.value,
                        ar.radius.settle_time, ar.radius.spread);
        }
        std::printf(", turn rate %s", ar.turn_rate.settled ? "settled" : "NOT settled");
        if (ar.turn_rate.settled) {
            std::printf(" at %.6g rad/s", ar.turn_rate.value);
        }
        std::printf("\n");
    }
    for (const circumnav::ComponentReport& cr : report.comps) {
        std::printf("  component (leader %d): common rate %.6g rad/s, spread %.3g, %s\n",
                    cr.leader_id, cr.common_rate, cr.rate_spread,
                    cr.rate_synchronized ? "synchronized" : "NOT synchronized");
    }
    std::printf("artifacts: %s, %s, 3 SVG plots in %s\n", csv_path.string().c_str(),
                report_path.string().c_str(), dir.string().c_str());
    return 0;
}

int cmd_plan_cc(const CommonOpts& opts) {
    const json root = load_root(opts);
    circumnav::OrientedPose start;
    circumnav::OrientedPose goal;
    double r_a = 0.0;
    double speed = 0.0;
    if (root.contains("plan")) {
        const json& p = root["plan"];
        const auto pose = [](const json& j) {
            return circumnav::OrientedPose{{j.at(0).get<double>(), j.at(1).get<double>()},
                                           j.at(2).get<double>()};
        };
        start = pose(p.at("start"));
        goal = pose(p.at("goal"));
        r_a = p.at("r_a").get<double>();
        speed = p.at("speed").get<double>();
    } else {
        // Fall back to the first planning leader of a scenario config.
        const circumnav::Scenario s = circumnav::load_scenario(opts.config, opts.sets);
        size_t found = s.agents.size();
        for (size_t i = 0; i < s.agents.size(); ++i) {
            if (s.programs[i] && s.programs[i]->plan) {
                found = i;
                break;
            }
        }
        if (found == s.agents.size()) {
            throw circumnav::ConfigError(
                "config has neither a 'plan' block nor a leader with a 'transfer'");
        }
        const circumnav::CCPlan& plan = *s.programs[found]->plan;
        start = plan.start;
        goal = plan.goal;
        r_a = plan.r_a;
        speed = plan.speed;
    }

    const circumnav::CCPlan plan = circumnav::plan_cc(start, goal, r_a, speed);
    const circumnav::CCCoefficients c = circumnav::cc_coefficients(start, goal);
    json out{{"start", {plan.start.position.x, plan.start.position.y, plan.start.heading}},
             {"goal", {plan.goal.position.x, plan.goal.position.y, plan.goal.heading}},
             {"speed", plan.speed},
             {"coefficients", {{"p1", c.p1}, {"p2", c.p2}, {"p3", c.p3}}},
             {"r_a", plan.r_a},
             {"r_b", plan.r_b},
             {"center_a", {plan.center_a.x, plan.center_a.y}},
             {"center_b", {plan.center_b.x, plan.center_b.y}},
             {"tangent", {plan.tangent.x, plan.tangent.y}},
             {"arc_a", plan.arc_a},
             {"arc_b", plan.arc_b},
             {"switch_time", plan.switch_time},
             {"total_time", plan.total_time}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_equilibrium(const CommonOpts& opts) {
    const json root = load_root(opts);
    const circumnav::PairConfig cfg = pair_from(root);
    const auto solutions = circumnav::solve_equilibrium(cfg);

    json out{{"omega", cfg.omega},
             {"R_i", cfg.v_i / std::abs(cfg.omega)},
             {"solutions", json::array()}};
    for (const auto& eq : solutions) {
        out["solutions"].push_back(equilibrium_json(cfg, eq));
    }
    if (solutions.empty()) {
        out["note"] = "no equilibrium: this gain/speed combination admits no steady turn";
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_certify(const CommonOpts& opts) {
    const json root = load_root(opts);
    const circumnav::PairConfig cfg = pair_from(root);
    circumnav::ZubovParams zp;
    if (root.contains("zubov")) {
        const json& z = root["zubov"];
        zp.alpha = z.value("alpha", zp.alpha);
        zp.L = z.value("L", zp.L);
        zp.resolution = z.value("resolution", zp.resolution);
    }

    const auto solutions = circumnav::solve_equilibrium(cfg);
    json out{{"omega", cfg.omega},
             {"zubov", {{"alpha", zp.alpha}, {"L", zp.L}, {"resolution", zp.resolution}}},
             {"solutions", json::array()}};
    for (const auto& eq : solutions) {
        const circumnav::CertificateReport rep = circumnav::certify_gains(cfg, eq, zp);
        json je = equilibrium_json(cfg, eq);
        je["certificate"] = {{"pass", rep.pass},
                             {"worst_value", rep.worst_value},
                             {"worst_z", {rep.worst_z.e1, rep.worst_z.e2}},
                             {"samples", rep.samples}};
        out["solutions"].push_back(std::move(je));
    }
    if (solutions.empty()) {
        out["note"] = "no equilibrium: nothing to certify";
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_check_topology(const CommonOpts& opts) {
    const circumnav::Scenario s = circumnav::load_scenario(opts.config, opts.sets);
    const circumnav::PathValidation pv = circumnav::validate_paths_to_leader(s.graph);

    std::printf("topology of %s: %zu agents\n", s.name.c_str(), s.agents.size());
    for (size_t i = 0; i < s.agents.size(); ++i) {
        if (s.graph.is_leader(static_cast<int>(i))) {
            std::printf("  agent %d: leader\n", s.ids[i]);
        } else {
            std::printf("  agent %d: -> agent %d, reaches leader %d in %d hop%s\n",
                        s.ids[i],
                        s.ids[static_cast<size_t>(s.graph.neighbor[i])],
                        s.ids[static_cast<size_t>(pv.terminal_leader[i])], pv.depth[i],
                        pv.depth[i] == 1 ? "" : "s");
        }
    }
    for (const auto& group : circumnav::components(s.graph)) {
        std::printf("  component (leader %d):", s.ids[static_cast<size_t>(group.front())]);
        for (int idx : group) std::printf(" %d", s.ids[static_cast<size_t>(idx)]);
        std::printf("\n");
    }
    std::printf("ok: every follower chain terminates at a leader\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bearing-based circumnavigation: simulate, plan, and certify"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    CommonOpts plan_opts;
    CommonOpts eq_opts;
    CommonOpts cert_opts;
    CommonOpts topo_opts;
    CLI::App* run_cmd =
        app.add_subcommand("run", "Simulate a scenario and emit CSV/report/plots");
    CLI::App* plan_cmd =
        app.add_subcommand("plan-cc", "Print the two-arc transfer for given poses");
    CLI::App* eq_cmd =
        app.add_subcommand("equilibrium", "Solve and classify steady pair configurations");
    CLI::App* cert_cmd =
        app.add_subcommand("certify", "Sample the decrease certificate on a grid");
    CLI::App* topo_cmd =
        app.add_subcommand("check-topology", "Validate follower-to-leader reachability");
    add_common(run_cmd, &run_opts);
    add_common(plan_cmd, &plan_opts);
    add_common(eq_cmd, &eq_opts);
    add_common(cert_cmd, &cert_opts);
    add_common(topo_cmd, &topo_opts);

    try {
        app.parse(argc, argv);
        if (run_cmd->parsed()) return cmd_run(run_opts);
        if (plan_cmd->parsed()) return cmd_plan_cc(plan_opts);
        if (eq_cmd->parsed()) return cmd_equilibrium(eq_opts);
        if (cert_cmd->parsed()) return cmd_certify(cert_opts);
        if (topo_cmd->parsed()) return cmd_check_topology(topo_opts);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const circumnav::AssumptionViolation& e) {
        std::cerr << "assumption violation: " << e.what() << '\n';
        return 3;
    } catch (const circumnav::DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << '\n';
        return 4;
    } catch (const circumnav::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const circumnav::PlanningError& e) {
        std::cerr << "planning error: " << e.what() << '\n';
        return 2;
    } catch (const circumnav::DegenerateGeometry& e) {
        std::cerr << "degenerate geometry: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
