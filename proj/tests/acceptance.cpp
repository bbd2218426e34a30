// Acceptance checks for the circumnavigation stack. Each criterion prints one
// [PASS]/[FAIL] line with its pinned tolerances; the process exits nonzero
// when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "circumnav/errors.hpp"
#include "circumnav/geometry.hpp"
#include "circumnav/guidance.hpp"
#include "circumnav/report.hpp"
#include "circumnav/scenario_io.hpp"
#include "circumnav/simulator.hpp"
#include "circumnav/stability.hpp"
#include "circumnav/topology.hpp"

using namespace circumnav;

namespace {

int failures = 0;

void report_line(int criterion, bool pass, const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, buf);
    if (!pass) ++failures;
}

std::filesystem::path config_path(const char* name) {
    return std::filesystem::path(CIRCUMNAV_CONFIG_DIR) / name;
}

RunReport run_bundled(const char* name, Scenario* out_scenario = nullptr) {
    const Scenario s = load_scenario(config_path(name));
    const SimLog log = run(s);
    RunReport rep = summarize(log, s.graph, s);
    if (out_scenario) *out_scenario = s;
    return rep;
}

// Criterion 1: the two-robot lab analog converges, and the follower settles
// on the radius forced by its speed and the common rate (0.15 / 0.15 = 1 m).
void criterion1() {
    const double radius_tol = 0.01;  // m
    const RunReport rep = run_bundled("hw-analog.json");
    const AgentReport& f = rep.agents[1];
    const bool pass =
        rep.all_settled && f.radius.settled && std::abs(f.radius.value - 1.0) <= radius_tol;
    report_line(1, pass, "lab-analog follower radius %.6f m (want 1 +/- %.2g m, %s)",
                f.radius.value, radius_tol, rep.all_settled ? "all settled" : "NOT settled");
}

// Criterion 2: five-agent chain. Everyone settles, the settled turn rates
// agree, and settled radii are proportional to speeds (R_i/R_j = v_i/v_j).
void criterion2() {
    const double rate_tol = 1e-3;   // rad/s
    const double ratio_tol = 0.01;  // relative
    Scenario s;
    const RunReport rep = run_bundled("case1.json", &s);
    bool settled = rep.all_settled;
    double rate_lo = 1e300;
    double rate_hi = -1e300;
    for (const AgentReport& ar : rep.agents) {
        settled = settled && ar.radius.settled && ar.turn_rate.settled;
        rate_lo = std::min(rate_lo, ar.turn_rate.value);
        rate_hi = std::max(rate_hi, ar.turn_rate.value);
    }
    double worst_ratio = 0.0;
    for (size_t i = 0; i < rep.agents.size(); ++i) {
        for (size_t j = i + 1; j < rep.agents.size(); ++j) {
            const double got = rep.agents[i].radius.value / rep.agents[j].radius.value;
            const double want = s.agents[i].v / s.agents[j].v;
            worst_ratio = std::max(worst_ratio, std::abs(got / want - 1.0));
        }
    }
    const bool pass = settled && (rate_hi - rate_lo) <= rate_tol && worst_ratio <= ratio_tol;
    report_line(2, pass,
                "chain of five: %s, rate spread %.2e rad/s (tol %.0e), "
                "worst radius-vs-speed ratio error %.2e (tol %.0e)",
                settled ? "all settled" : "NOT all settled", rate_hi - rate_lo, rate_tol,
                worst_ratio, ratio_tol);
}

// Criterion 3: two independent leader groups synchronize internally but hold
// different common rates.
void criterion3() {
    const double sync_tol = 1e-3;  // rad/s
    const RunReport rep = run_bundled("case2.json");
    bool pass = rep.comps.size() == 2;
    if (pass) {
        const std::set<int> got_a(rep.comps[0].member_ids.begin(),
                                  rep.comps[0].member_ids.end());
        const std::set<int> got_b(rep.comps[1].member_ids.begin(),
                                  rep.comps[1].member_ids.end());
        pass = got_a == std::set<int>{1, 2, 3} && got_b == std::set<int>{4, 5, 6};
        for (const ComponentReport& cr : rep.comps) {
            pass = pass && cr.rate_synchronized && cr.rate_spread <= sync_tol;
        }
        pass = pass &&
               std::abs(rep.comps[0].common_rate - rep.comps[1].common_rate) > sync_tol;
    }
    if (rep.comps.size() == 2) {
        report_line(3, pass,
                    "two groups: rates %.4f and %.4f rad/s, spreads %.1e / %.1e (tol %.0e)",
                    rep.comps[0].common_rate, rep.comps[1].common_rate,
                    rep.comps[0].rate_spread, rep.comps[1].rate_spread, sync_tol);
    } else {
        report_line(3, false, "expected 2 groups, found %zu", rep.comps.size());
    }
}

// Largest real part among the eigenvalues of a 3x3 matrix, via the
// characteristic cubic (trigonometric/Cardano split on the discriminant).
double max_real_eig3(const double m[3][3]) {
    const double c2 = -(m[0][0] + m[1][1] + m[2][2]);
    const double c1 = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) +
                      (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
                      (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    const double c0 = -(m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                        m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                        m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]));
    const double p = c1 - c2 * c2 / 3.0;
    const double q = c0 - c2 * c1 / 3.0 + 2.0 * c2 * c2 * c2 / 27.0;
    const double shift = -c2 / 3.0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (disc > 0.0) {  // one real root, one complex pair
        const double s = std::sqrt(disc);
        const double t1 = std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s);
        return shift + std::max(t1, -t1 / 2.0);
    }
    const double rho = 2.0 * std::sqrt(std::max(-p / 3.0, 0.0));
    const double arg = rho > 0.0 ? std::clamp(3.0 * q / (p * rho), -1.0, 1.0) : 0.0;
    const double theta = std::acos(arg);
    double best = -1e300;
    for (int k = 0; k < 3; ++k) {
        best = std::max(best, rho * std::cos((theta - 2.0 * kPi * k) / 3.0));
    }
    return shift + best;
}

// Largest real eigenvalue part of the FULL three-state error linearization
// (e1, e2, r) at a steady turn, range left free. The grid certificate speaks
// about the reduced model with the range frozen; range feedback can
// destabilize a reduced-stable steady state, so the full matrix decides
// whether a closed-loop simulation can settle there at all.
double full_linearization_max_re(const PairConfig& cfg, const EquilibriumSolution& eq) {
    const auto field = [&cfg](const double s[3], double out[3]) {
        const auto [f1, f2] = error_dynamics(cfg, {s[0], s[1]}, s[2]);
        out[0] = f1;
        out[1] = f2;
        out[2] = cfg.v_j * std::cos(s[0] - s[1]) - cfg.v_i * std::cos(s[1]);
    };
    const double at[3] = {eq.e1_bar, eq.e2_bar, eq.r_ij_bar};
    const double h = 1e-6;
    double jac[3][3];
    for (int col = 0; col < 3; ++col) {
        double lo[3];
        double hi[3];
        double flo[3];
        double fhi[3];
        for (int k = 0; k < 3; ++k) lo[k] = hi[k] = at[k];
        lo[col] -= h;
        hi[col] += h;
        field(lo, flo);
        field(hi, fhi);
        for (int row = 0; row < 3; ++row) jac[row][col] = (fhi[row] - flo[row]) / (2.0 * h);
    }
    return max_real_eig3(jac);
}

// Criterion 4: random pair configurations whose certificate passes on a
// half-width-0.5 box must, in full closed-loop simulation from a perturbed
// start, settle onto one of the predicted steady states. Draws whose full
// linearization is not decisively Hurwitz are rejected and counted: the
// criterion compares steady values, which must exist in the full loop.
void criterion4() {
    using clock = std::chrono::steady_clock;
    const auto wall0 = clock::now();
    const double match_tol = 1e-3;     // rad and m, on trailing 10 s means
    const double min_decay = 5e-3;     // 1/s, full-linearization margin
    const int want = 25;
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> u_speed(0.1, 2.0);
    std::uniform_real_distribution<double> u_radius(0.5, 5.0);
    std::uniform_real_distribution<double> u_gain(0.1, 2.0);
    std::uniform_real_distribution<double> u_pos(-0.05, 0.05);
    std::uniform_real_distribution<double> u_head(-0.3, 0.3);
    std::bernoulli_distribution u_dir(0.5);

    ZubovParams zp;
    zp.alpha = 1.0;
    zp.L = 0.5;
    zp.resolution = 101;

    int accepted = 0;
    int matched = 0;
    int attempts = 0;
    int range_unstable = 0;
    for (; accepted < want && attempts < 4000; ++attempts) {
        const GuidanceGains gains{u_gain(rng), u_gain(rng)};
        const Direction dir =
            u_dir(rng) ? Direction::CounterClockwise : Direction::Clockwise;
        const PairConfig cfg =
            make_pair_config(u_speed(rng), u_speed(rng), u_radius(rng), dir, gains);
        const std::vector<EquilibriumSolution> roots = solve_equilibrium(cfg);
        std::vector<const EquilibriumSolution*> stable;
        const EquilibriumSolution* certified = nullptr;
        double full_re = 0.0;
        for (const EquilibriumSolution& eq : roots) {
            if (eq.stability != StabilityClass::AsymptoticallyStable) continue;
            stable.push_back(&eq);
            if (certified || !certify_gains(cfg, eq, zp).pass) continue;
            const double re = full_linearization_max_re(cfg, eq);
            if (re > -min_decay) {
                ++range_unstable;
                continue;
            }
            certified = &eq;
            full_re = re;
        }
        if (!certified) continue;
        ++accepted;

        // Both agents on concentric circles phased per the certified root,
        // follower perturbed off it; horizon scaled to the slowest full mode.
        Scenario s;
        s.name = "accept4";
        s.dt = 0.005;
        s.t_end = std::clamp(25.0 / std::abs(full_re), 200.0, 3000.0);
        s.gains = gains;
        const OrbitSpec orbit_j = make_orbit({0.0, 0.0}, cfg.R_j, dir, cfg.v_j);
        const OrbitSpec orbit_i = make_orbit({0.0, 0.0}, certified->R_i, dir, cfg.v_i);
        const double phase_j = 0.7;
        const OrientedPose pj = orbit_pose(orbit_j, phase_j);
        const OrientedPose pi = orbit_pose(orbit_i, phase_j - certified->e1_bar);
        s.agents = {AgentState{pj.position.x, pj.position.y, pj.heading, cfg.v_j},
                    AgentState{pi.position.x + u_pos(rng), pi.position.y + u_pos(rng),
                               pi.heading + u_head(rng), cfg.v_i}};
        s.ids = {1, 2};
        s.graph = validate_topology(std::vector<int>{-1, 0});
        s.programs.assign(2, std::nullopt);
        LeaderProgram prog;
        prog.orbit = orbit_j;
        s.programs[0] = prog;

        const SimLog log = run(s);
        const size_t n = log.t.size();
        const size_t k0 = n - std::min(n, static_cast<size_t>(10.0 / s.dt));
        bool hit = false;
        for (const EquilibriumSolution* eq : stable) {
            double d1 = 0.0;
            double d2 = 0.0;
            double dr = 0.0;
            for (size_t k = k0; k < n; ++k) {
                d1 += wrap_angle(log.gamma[0][k] - log.gamma[1][k] - eq->e1_bar);
                d2 += wrap_angle(log.lambda_edge[1][k] - log.gamma[1][k] - eq->e2_bar);
                dr += log.r_edge[1][k] - eq->r_ij_bar;
            }
            const double m = static_cast<double>(n - k0);
            if (std::abs(d1 / m) <= match_tol && std::abs(d2 / m) <= match_tol &&
                std::abs(dr / m) <= match_tol) {
                hit = true;
                break;
            }
        }
        if (hit) ++matched;
    }
    const double secs = std::chrono::duration<double>(clock::now() - wall0).count();
    const bool pass = accepted == want && matched == want && secs < 60.0;
    report_line(4, pass,
                "%d/%d certified random pairs reached a predicted steady state "
                "within %.0e (%d draws, %d range-feedback-unstable rejected, %.1f s wall)",
                matched, accepted, match_tol, attempts, range_unstable, secs);
}

// Criterion 5: the value function V = 1 - exp(-alpha |z|^2) satisfies its
// defining identity dV/dz . f~ = -h (1 - V) to roundoff everywhere sampled.
void criterion5() {
    const double tol = 1e-9;
    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> u_z(-3.0, 3.0);
    std::uniform_real_distribution<double> u_alpha(0.2, 5.0);
    std::uniform_real_distribution<double> u_speed(0.1, 2.0);
    std::uniform_real_distribution<double> u_radius(0.5, 5.0);
    std::uniform_real_distribution<double> u_gain(0.1, 2.0);
    std::bernoulli_distribution u_dir(0.5);

    long total = 0;
    double worst = 0.0;
    while (total < 10000) {
        const PairConfig cfg = make_pair_config(
            u_speed(rng), u_speed(rng), u_radius(rng),
            u_dir(rng) ? Direction::CounterClockwise : Direction::Clockwise,
            {u_gain(rng), u_gain(rng)});
        const std::vector<EquilibriumSolution> roots = solve_equilibrium(cfg);
        for (const EquilibriumSolution& eq : roots) {
            for (int k = 0; k < 100 && total < 10000; ++k) {
                ZubovParams zp;
                zp.alpha = u_alpha(rng);
                const ErrorState z{u_z(rng), u_z(rng)};
                worst = std::max(worst, std::abs(zubov_pde_residual(cfg, eq, z, zp)));
                ++total;
            }
        }
    }
    report_line(5, worst <= tol,
                "value-function identity defect over %ld random samples: %.2e (tol %.0e)",
                total, worst, tol);
}

// Criterion 6: catalog sweep on the full +/-2 rad box. Every gain setting the
// grid certificate accepts must have all sampled starts in the box converge
// in the reduced dynamics; settings the certificate rejects make no claim.
void criterion6() {
    const double gain_grid[] = {0.25, 0.8, 1.35, 1.9, 2.45, 3.0};
    struct Base {
        double v_i, v_j, R_j;
        Direction dir;
    };
    const Base bases[] = {
        {1.0, 1.0, 1.0, Direction::CounterClockwise},
        {0.5, 1.0, 1.0, Direction::CounterClockwise},
        {2.0, 1.0, 1.0, Direction::CounterClockwise},
        {1.0, 1.5, 2.0, Direction::CounterClockwise},
        {0.15, 0.105, 0.7, Direction::CounterClockwise},
        {1.0, 1.0, 1.0, Direction::Clockwise},
    };
    ZubovParams zp;  // alpha 1, L 2, resolution 201
    std::mt19937 rng(13u);
    std::uniform_real_distribution<double> u_z(-2.0, 2.0);

    int settings = 0;
    int certified = 0;
    int contradicted = 0;
    for (const Base& b : bases) {
        for (const double c1 : gain_grid) {
            for (const double c2 : gain_grid) {
                ++settings;
                const PairConfig cfg =
                    make_pair_config(b.v_i, b.v_j, b.R_j, b.dir, {c1, c2});
                for (const EquilibriumSolution& eq : solve_equilibrium(cfg)) {
                    if (eq.stability != StabilityClass::AsymptoticallyStable) continue;
                    if (!certify_gains(cfg, eq, zp).pass) continue;
                    ++certified;
                    const double slowest = std::max(
                        std::min(std::abs(eq.eig1.real()), std::abs(eq.eig2.real())),
                        1e-3);
                    const double t_end = std::clamp(30.0 / slowest, 200.0, 5000.0);
                    for (int k = 0; k < 100; ++k) {
                        const ErrorState z0{u_z(rng), u_z(rng)};
                        try {
                            const ErrorState zf =
                                integrate_reduced(cfg, eq, z0, 0.005, t_end, 1e-6);
                            if (std::hypot(zf.e1, zf.e2) > 1e-6) {
                                ++contradicted;
                                break;
                            }
                        } catch (const DivergenceError&) {
                            ++contradicted;
                            break;
                        }
                    }
                }
            }
        }
    }
    report_line(6, contradicted == 0,
                "catalog of %d gain settings: %d certified on the +/-2 rad box, "
                "%d contradicted by reduced-order simulation%s",
                settings, certified, contradicted,
                certified == 0 ? " (no setting certifies on a box this wide; "
                                 "the decrease condition fails along the antidiagonal)"
                               : "");
}

// Criterion 7: random two-arc transfers satisfy the radius relation, circle
// tangency, and land exactly on the goal pose under arc-exact propagation.
void criterion7() {
    const double alg_tol = 1e-9;   // relative, radius relation and tangency
    const double end_tol = 1e-6;   // m and rad, propagated endpoint
    const int want = 1000;
    std::mt19937 rng(17u);
    std::uniform_real_distribution<double> u_pos(-5.0, 5.0);
    std::uniform_real_distribution<double> u_head(-kPi, kPi);
    std::uniform_real_distribution<double> u_mag(0.2, 8.0);
    std::uniform_real_distribution<double> u_speed(0.5, 2.0);
    std::bernoulli_distribution u_sign(0.5);

    int accepted = 0;
    int rejected = 0;
    int attempts = 0;
    double worst_alg = 0.0;
    double worst_tan = 0.0;
    double worst_pos = 0.0;
    double worst_head = 0.0;
    for (; accepted < want && attempts < 20000; ++attempts) {
        const OrientedPose start{{u_pos(rng), u_pos(rng)}, u_head(rng)};
        const OrientedPose goal{{u_pos(rng), u_pos(rng)}, u_head(rng)};
        const double r_a = (u_sign(rng) ? 1.0 : -1.0) * u_mag(rng);
        const double speed = u_speed(rng);
        try {
            const CCCoefficients c = cc_coefficients(start, goal);
            // Conditioning gates, counted openly: r_a at the pole of the
            // radius relation sends |r_b| to infinity, and a huge second
            // circle turns the fixed endpoint tolerance into a roundoff test.
            if (std::abs(r_a - c.p1) < 1e-2) {
                ++rejected;
                continue;
            }
            const CCPlan plan = plan_cc(start, goal, r_a, speed);
            if (std::abs(plan.r_b) > 1e4) {
                ++rejected;
                continue;
            }
            const double alg =
                std::abs((plan.r_b - c.p2) * (plan.r_a - c.p1) - c.p3) /
                std::max(1.0, std::abs(c.p3));
            const double tan =
                std::abs(distance(plan.center_a, plan.center_b) -
                         std::abs(plan.r_a + plan.r_b)) /
                std::max(1.0, std::abs(plan.r_a) + std::abs(plan.r_b));
            const AgentState s0{start.position.x, start.position.y, start.heading, speed};
            const AgentState mid = advance_arc(s0, -speed / plan.r_a, plan.switch_time);
            const AgentState end =
                advance_arc(mid, speed / plan.r_b, plan.total_time - plan.switch_time);
            const double dpos =
                std::hypot(end.x - goal.position.x, end.y - goal.position.y);
            const double dhead = std::abs(wrap_angle(end.gamma - goal.heading));
            worst_alg = std::max(worst_alg, alg);
            worst_tan = std::max(worst_tan, tan);
            worst_pos = std::max(worst_pos, dpos);
            worst_head = std::max(worst_head, dhead);
            ++accepted;
        } catch (const PlanningError&) {
            ++rejected;
        }
    }
    const bool pass = accepted == want && worst_alg <= alg_tol && worst_tan <= alg_tol &&
                      worst_pos <= end_tol && worst_head <= end_tol;
    report_line(7, pass,
                "%d random transfers: radius-relation defect %.1e, tangency %.1e "
                "(tol %.0e), endpoint %.1e m / %.1e rad (tol %.0e); %d rejections",
                accepted, worst_alg, worst_tan, alg_tol, worst_pos, worst_head, end_tol,
                rejected);
}

// Criterion 8: logged range and bearing series are consistent with the
// closed-form relative rates at second order: halving dt must shrink the
// central-difference defect by ~4x.
void criterion8() {
    const double min_order = 1.9;
    auto build = [](double dt) {
        Scenario s;
        s.name = "order";
        s.dt = dt;
        s.t_end = 20.0;
        s.gains = {1.0, 1.0};
        const OrbitSpec orbit =
            make_orbit({0.0, 0.0}, 0.7, Direction::CounterClockwise, 0.105);
        const OrientedPose p = orbit_pose(orbit, 0.0);
        s.agents = {AgentState{p.position.x, p.position.y, p.heading, 0.105},
                    AgentState{0.87, 0.16, 2.4260076602720404, 0.15}};
        s.ids = {1, 2};
        s.graph = validate_topology(std::vector<int>{-1, 0});
        s.programs.assign(2, std::nullopt);
        LeaderProgram prog;
        prog.orbit = orbit;
        s.programs[0] = prog;
        return s;
    };
    auto fd_defect = [](const Scenario& s) {
        const SimLog log = run(s);
        const std::vector<double> lam = unwrap_series(log.lambda_edge[1]);
        double worst_r = 0.0;
        double worst_l = 0.0;
        for (size_t k = 1; k + 1 < log.t.size(); ++k) {
            const AgentState self{log.x[1][k], log.y[1][k], log.gamma[1][k],
                                  s.agents[1].v};
            const AgentState nb{log.x[0][k], log.y[0][k], log.gamma[0][k],
                                s.agents[0].v};
            const auto [r_dot, los_dot] = polar_rates(self, nb);
            const double fd_r =
                (log.r_edge[1][k + 1] - log.r_edge[1][k - 1]) / (2.0 * s.dt);
            const double fd_l = (lam[k + 1] - lam[k - 1]) / (2.0 * s.dt);
            worst_r = std::max(worst_r, std::abs(fd_r - r_dot));
            worst_l = std::max(worst_l, std::abs(fd_l - los_dot));
        }
        return std::pair<double, double>{worst_r, worst_l};
    };
    const auto [r_coarse, l_coarse] = fd_defect(build(0.01));
    const auto [r_fine, l_fine] = fd_defect(build(0.005));
    const double order_r = std::log2(r_coarse / r_fine);
    const double order_l = std::log2(l_coarse / l_fine);
    const bool pass = order_r >= min_order && order_l >= min_order;
    report_line(8, pass,
                "range/bearing rate consistency: observed orders %.2f and %.2f "
                "(want >= %.1f)",
                order_r, order_l, min_order);
}

// Criterion 9: randomized structural properties of the communication forest:
// valid forests are accepted with consistent depths/roots, planted loops are
// rejected with the actual loop attached, and equidistant sensing candidates
// resolve to the lowest index.
void criterion9() {
    std::mt19937 rng(23u);
    auto pick = [&rng](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    bool ok = true;
    std::string why;

    const int forest_trials = 200;
    for (int t = 0; t < forest_trials && ok; ++t) {
        const int n = pick(1, 40);
        const int leaders = pick(1, n);
        std::vector<int> order(static_cast<size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<int> neighbor(static_cast<size_t>(n), -1);
        for (int p = leaders; p < n; ++p) {
            neighbor[static_cast<size_t>(order[static_cast<size_t>(p)])] =
                order[static_cast<size_t>(pick(0, p - 1))];
        }
        try {
            const CommGraph g = validate_topology(neighbor);
            const PathValidation pv = validate_paths_to_leader(g);
            for (int i = 0; i < n; ++i) {
                int cur = i;
                for (int hop = 0; hop < pv.depth[static_cast<size_t>(i)]; ++hop) {
                    cur = g.neighbor[static_cast<size_t>(cur)];
                }
                if (!g.is_leader(cur) ||
                    cur != pv.terminal_leader[static_cast<size_t>(i)]) {
                    ok = false;
                    why = "depth walk missed the terminal leader";
                }
            }
        } catch (const std::exception& e) {
            ok = false;
            why = std::string("valid forest rejected: ") + e.what();
        }
    }

    const int cycle_trials = 200;
    for (int t = 0; t < cycle_trials && ok; ++t) {
        const int n = pick(4, 32);
        const int leaders = pick(1, n - 2);
        std::vector<int> order(static_cast<size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<int> neighbor(static_cast<size_t>(n), -1);
        for (int p = leaders; p < n; ++p) {
            neighbor[static_cast<size_t>(order[static_cast<size_t>(p)])] =
                order[static_cast<size_t>(pick(0, p - 1))];
        }
        std::vector<int> followers(order.begin() + leaders, order.end());
        std::shuffle(followers.begin(), followers.end(), rng);
        const int len = pick(2, std::min<int>(5, static_cast<int>(followers.size())));
        for (int j = 0; j < len; ++j) {
            neighbor[static_cast<size_t>(followers[static_cast<size_t>(j)])] =
                followers[static_cast<size_t>((j + 1) % len)];
        }
        try {
            validate_topology(neighbor);
            ok = false;
            why = "planted loop accepted";
        } catch (const AssumptionViolation& e) {
            const std::vector<int>& cyc = e.cycle();
            if (cyc.size() < 2) {
                ok = false;
                why = "loop rejected without reporting it";
            } else {
                const std::set<int> uniq(cyc.begin(), cyc.end());
                if (uniq.size() != cyc.size()) {
                    ok = false;
                    why = "reported loop repeats an index";
                }
                for (size_t j = 0; ok && j < cyc.size(); ++j) {
                    const int from = cyc[j];
                    const int to = cyc[(j + 1) % cyc.size()];
                    if (neighbor[static_cast<size_t>(from)] != to) {
                        ok = false;
                        why = "reported loop is not a loop of the graph";
                    }
                }
            }
        }
    }

    const int tie_trials = 50;
    for (int t = 0; t < tie_trials && ok; ++t) {
        const int n = 5;
        std::vector<int> perm(static_cast<size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const int f = perm[0];
        std::vector<Vec2> pos(static_cast<size_t>(n));
        std::vector<bool> lead(static_cast<size_t>(n), true);
        lead[static_cast<size_t>(f)] = false;
        const Vec2 base{1.0, -2.0};
        pos[static_cast<size_t>(f)] = base;
        const Vec2 offs[4] = {{2.0, 0.0}, {-2.0, 0.0}, {0.0, 2.0}, {0.0, -2.0}};
        int oi = 0;
        int lowest = n;
        SensingGraph sg;
        sg.n = n;
        for (int i = 0; i < n; ++i) {
            if (i == f) continue;
            pos[static_cast<size_t>(i)] = base + offs[oi++];
            lowest = std::min(lowest, i);
            sg.edges.emplace_back(f, i);
        }
        const CommGraph g = build_comm_graph(sg, pos, lead);
        if (g.neighbor[static_cast<size_t>(f)] != lowest) {
            ok = false;
            why = "equidistant tie not broken toward the lowest index";
        }
    }

    if (ok) {
        report_line(9, true,
                    "forest/loop/tie properties held over %d+%d+%d randomized trials",
                    forest_trials, cycle_trials, tie_trials);
    } else {
        report_line(9, false, "%s", why.c_str());
    }
}

void guarded(int criterion, void (*fn)()) {
    try {
        fn();
    } catch (const std::exception& e) {
        report_line(criterion, false, "unexpected exception: %s", e.what());
    }
}

}  // namespace

int main() {
    guarded(1, criterion1);
    guarded(2, criterion2);
    guarded(3, criterion3);
    guarded(4, criterion4);
    guarded(5, criterion5);
    guarded(6, criterion6);
    guarded(7, criterion7);
    guarded(8, criterion8);
    guarded(9, criterion9);
    if (failures == 0) {
        std::printf("all 9 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria failed\n", failures);
    return 1;
}
