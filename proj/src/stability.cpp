#include "circumnav/stability.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "circumnav/errors.hpp"

namespace circumnav {

namespace {

// Geometry of two concentric circles of radii R_i (follower) and R_j
// (neighbor) traversed at the common signed rate omega, with the neighbor
// leading by phase delta. Positions R*exp(i*theta), headings theta + s*pi/2
// where s = sign(omega). The relative vector is R_j*exp(i*delta) - R_i up to
// the common rotation exp(i*theta_i), which cancels in every error variable.
struct SteadyGeometry {
    double e2_bar;
    double r_bar;
};

SteadyGeometry steady_geometry(double R_i, double R_j, double delta, double omega_sign) {
    const double wx = R_j * std::cos(delta) - R_i;
    const double wy = R_j * std::sin(delta);
    const double r_bar = std::hypot(wx, wy);
    const double e2 = std::atan2(wy, wx) - omega_sign * kPi / 2.0;
    return {wrap_angle(e2), r_bar};
}

}  // namespace

PairConfig make_pair_config(double v_i, double v_j, double R_j, Direction direction,
                            const GuidanceGains& gains) {
    PairConfig cfg;
    cfg.v_i = v_i;
    cfg.v_j = v_j;
    cfg.R_j = R_j;
    cfg.omega = (direction == Direction::CounterClockwise ? 1.0 : -1.0) * v_j / R_j;
    cfg.gains = gains;
    validate_pair_config(cfg);
    return cfg;
}

void validate_pair_config(const PairConfig& cfg) {
    if (!(cfg.v_i > 0.0) || !(cfg.v_j > 0.0) || !std::isfinite(cfg.v_i) ||
        !std::isfinite(cfg.v_j)) {
        throw ConfigError("pair: speeds must be finite and > 0");
    }
    if (!(cfg.R_j > 0.0) || !std::isfinite(cfg.R_j)) {
        throw ConfigError("pair: R_j must be finite and > 0");
    }
    const double expect = cfg.v_j / cfg.R_j;
    if (std::abs(std::abs(cfg.omega) - expect) > 1e-9 * expect) {
        throw ConfigError("pair: |omega| must equal v_j/R_j (got " +
                          std::to_string(cfg.omega) + ", expected magnitude " +
                          std::to_string(expect) + ")");
    }
    validate_gains(cfg.gains);
}

std::pair<double, double> error_dynamics(const PairConfig& cfg, const ErrorState& e,
                                         double r_ij) {
    if (!(r_ij > 0.0)) {
        throw DegenerateGeometry("error_dynamics: r_ij must be > 0");
    }
    const double u = cfg.gains.c1 * e.e1 + cfg.gains.c2 * std::sin(e.e2);
    const double f1 = cfg.omega - u;
    const double f2 =
        (cfg.v_j * std::sin(e.e1 - e.e2) + cfg.v_i * std::sin(e.e2)) / r_ij - u;
    return {f1, f2};
}

std::array<double, 4> error_jacobian_fd(const PairConfig& cfg, const ErrorState& e,
                                        double r_ij) {
    constexpr double h = 1e-6;
    std::array<double, 4> jac{};
    for (int col = 0; col < 2; ++col) {
        ErrorState ep = e;
        ErrorState em = e;
        (col == 0 ? ep.e1 : ep.e2) += h;
        (col == 0 ? em.e1 : em.e2) -= h;
        const auto fp = error_dynamics(cfg, ep, r_ij);
        const auto fm = error_dynamics(cfg, em, r_ij);
        jac[static_cast<size_t>(col)] = (fp.first - fm.first) / (2.0 * h);
        jac[static_cast<size_t>(2 + col)] = (fp.second - fm.second) / (2.0 * h);
    }
    return jac;
}

std::pair<double, double> shifted_error_dynamics(const PairConfig& cfg,
                                                 const EquilibriumSolution& eq,
                                                 const ErrorState& z) {
    const double e1 = z.e1 + eq.e1_bar;
    const double e2 = z.e2 + eq.e2_bar;
    const double c1 = cfg.gains.c1;
    const double c2 = cfg.gains.c2;
    // omega is eliminated through omega = c1*e1_bar + c2*sin(e2_bar), so the
    // origin is a fixed point of the first component exactly, independent of
    // solver tolerance.
    const double f1 = -c1 * z.e1 + c2 * (std::sin(eq.e2_bar) - std::sin(e2));
    const double f2 = (cfg.v_j * std::sin(e1 - e2) + cfg.v_i * std::sin(e2)) / eq.r_ij_bar -
                      c1 * e1 - c2 * std::sin(e2);
    return {f1, f2};
}

std::vector<EquilibriumSolution> solve_equilibrium(const PairConfig& cfg) {
    validate_pair_config(cfg);
    const double R_i = cfg.v_i / std::abs(cfg.omega);
    const double R_j = cfg.R_j;
    const double sign = cfg.omega < 0.0 ? -1.0 : 1.0;
    const double sep_floor = 1e-9 * (R_i + R_j);

    // Steady-turn condition on the phase offset. Undefined where the two
    // agents would coincide (r_bar ~ 0, only possible near delta = 0 with
    // R_i = R_j); such brackets are skipped.
    const auto g = [&](double delta) {
        const SteadyGeometry geo = steady_geometry(R_i, R_j, delta, sign);
        return cfg.gains.c1 * delta + cfg.gains.c2 * std::sin(geo.e2_bar) - cfg.omega;
    };
    const auto separated = [&](double delta) {
        return steady_geometry(R_i, R_j, delta, sign).r_bar > sep_floor;
    };

    constexpr int kGrid = 4096;
    std::vector<double> roots;
    // Sample (-pi, pi] left to right; the open left endpoint is never
    // evaluated (delta = -pi + k*h for k = 1..kGrid).
    double prev_delta = -kPi + kTwoPi / kGrid;
    double prev_g = g(prev_delta);
    bool prev_ok = separated(prev_delta);
    if (prev_ok && prev_g == 0.0) roots.push_back(prev_delta);
    for (int k = 2; k <= kGrid; ++k) {
        const double delta = -kPi + kTwoPi * k / kGrid;
        const double gd = g(delta);
        const bool ok = separated(delta);
        if (ok && gd == 0.0) {
            roots.push_back(delta);
        } else if (prev_ok && ok && prev_g != 0.0 && (prev_g < 0.0) != (gd < 0.0)) {
            double lo = prev_delta;
            double hi = delta;
            double glo = prev_g;
            while (hi - lo > 1e-13) {
                const double mid = 0.5 * (lo + hi);
                const double gm = g(mid);
                if (gm == 0.0) {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if ((glo < 0.0) != (gm < 0.0)) {
                    hi = mid;
                } else {
                    lo = mid;
                    glo = gm;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_delta = delta;
        prev_g = gd;
        prev_ok = ok;
    }

    std::vector<EquilibriumSolution> out;
    for (double root : roots) {
        if (!out.empty() && std::abs(root - out.back().e1_bar) < 1e-9) continue;
        const SteadyGeometry geo = steady_geometry(R_i, R_j, root, sign);

        EquilibriumSolution eq;
        eq.e1_bar = root;
        eq.e2_bar = geo.e2_bar;
        eq.r_ij_bar = geo.r_bar;
        eq.R_i = R_i;

        const auto jac =
            error_jacobian_fd(cfg, ErrorState{eq.e1_bar, eq.e2_bar}, eq.r_ij_bar);
        const double tr = jac[0] + jac[3];
        const double det = jac[0] * jac[3] - jac[1] * jac[2];
        const std::complex<double> disc =
            std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));
        eq.eig1 = 0.5 * (tr + disc);
        eq.eig2 = 0.5 * (tr - disc);
        // The FD Jacobian carries ~1e-10 noise; a real part inside that band
        // cannot be classified.
        const double band =
            1e-7 * std::max(1.0, std::max(std::abs(eq.eig1), std::abs(eq.eig2)));
        if (eq.eig1.real() < -band && eq.eig2.real() < -band) {
            eq.stability = StabilityClass::AsymptoticallyStable;
        } else if (eq.eig1.real() > band || eq.eig2.real() > band) {
            eq.stability = StabilityClass::Unstable;
        } else {
            eq.stability = StabilityClass::Marginal;
        }
        out.push_back(eq);
    }
    return out;
}

double zubov_V(const ErrorState& z, const ZubovParams& p) {
    if (!(p.alpha > 0.0)) {
        throw ConfigError("zubov: alpha must be > 0");
    }
    return 1.0 - std::exp(-p.alpha * (z.e1 * z.e1 + z.e2 * z.e2));
}

double zubov_pde_residual(const PairConfig& cfg, const EquilibriumSolution& eq,
                          const ErrorState& z, const ZubovParams& p) {
    const auto [f1, f2] = shifted_error_dynamics(cfg, eq, z);
    const double n2 = z.e1 * z.e1 + z.e2 * z.e2;
    const double s = z.e1 * f1 + z.e2 * f2;
    // Left side: gradient of V dotted with the shifted flow.
    const double lhs = 2.0 * p.alpha * std::exp(-p.alpha * n2) * s;
    // Right side: -h * (1 - V) with h = -2*alpha*s, both evaluated as written.
    const double h = -2.0 * p.alpha * s;
    const double rhs = -h * (1.0 - zubov_V(z, p));
    return lhs - rhs;
}

CertificateReport certify_gains(const PairConfig& cfg, const EquilibriumSolution& eq,
                                const ZubovParams& p) {
    if (!(p.alpha > 0.0) || !(p.L > 0.0) || p.resolution < 2) {
        throw ConfigError("zubov: need alpha > 0, L > 0, resolution >= 2");
    }
    CertificateReport rep;
    rep.params = p;
    rep.pass = true;
    rep.worst_value = -std::numeric_limits<double>::infinity();
    const int n = p.resolution;
    for (int iy = 0; iy < n; ++iy) {
        const double z2 = -p.L + 2.0 * p.L * iy / (n - 1);
        for (int ix = 0; ix < n; ++ix) {
            const double z1 = -p.L + 2.0 * p.L * ix / (n - 1);
            if (std::abs(z1) < 1e-12 && std::abs(z2) < 1e-12) continue;
            const ErrorState z{z1, z2};
            const auto [f1, f2] = shifted_error_dynamics(cfg, eq, z);
            const double s = z1 * f1 + z2 * f2;
            ++rep.samples;
            if (s > rep.worst_value) {
                rep.worst_value = s;
                rep.worst_z = z;
            }
            if (s >= 0.0) rep.pass = false;
        }
    }
    return rep;
}

ErrorState integrate_reduced(const PairConfig& cfg, const EquilibriumSolution& eq,
                             ErrorState z0, double dt, double t_end, double stop_norm) {
    if (!(dt > 0.0) || !(t_end > 0.0)) {
        throw ConfigError("integrate_reduced: dt and t_end must be > 0");
    }
    const auto f = [&](const ErrorState& z) { return shifted_error_dynamics(cfg, eq, z); };
    ErrorState z = z0;
    const long steps = static_cast<long>(std::ceil(t_end / dt));
    for (long k = 0; k < steps; ++k) {
        if (stop_norm > 0.0 && std::hypot(z.e1, z.e2) <= stop_norm) break;
        const auto k1 = f(z);
        const auto k2 = f({z.e1 + 0.5 * dt * k1.first, z.e2 + 0.5 * dt * k1.second});
        const auto k3 = f({z.e1 + 0.5 * dt * k2.first, z.e2 + 0.5 * dt * k2.second});
        const auto k4 = f({z.e1 + dt * k3.first, z.e2 + dt * k3.second});
        z.e1 += dt / 6.0 * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first);
        z.e2 += dt / 6.0 * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second);
        if (!std::isfinite(z.e1) || !std::isfinite(z.e2)) {
            throw DivergenceError("integrate_reduced: non-finite error state", dt * (k + 1));
        }
    }
    return z;
}

}  // namespace circumnav
