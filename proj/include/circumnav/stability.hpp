#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "circumnav/guidance.hpp"

namespace circumnav {

// Steady leader-follower pair under a common signed angular rate omega.
// The neighbor orbits the target at radius R_j, so |omega| = v_j / R_j.
struct PairConfig {
    double v_i = 1.0;   // m/s, follower speed
    double v_j = 1.0;   // m/s, neighbor speed
    double R_j = 1.0;   // m, neighbor orbit radius
    double omega = 1.0; // rad/s, signed common rate
    GuidanceGains gains;
};

// Builds the config with omega = +/- v_j / R_j and validates invariants.
PairConfig make_pair_config(double v_i, double v_j, double R_j, Direction direction,
                            const GuidanceGains& gains);

// Throws ConfigError unless speeds and R_j are positive, |omega| = v_j/R_j
// within 1e-9 relative, and the gains are valid.
void validate_pair_config(const PairConfig& cfg);

enum class StabilityClass { AsymptoticallyStable, Unstable, Marginal };

// One steady configuration of the two-state error dynamics, parameterized by
// the phase offset delta between the two concentric orbits (e1_bar = delta).
// r_ij_bar is the constant inter-agent range and R_i = v_i/|omega| the
// follower's orbit radius forced by turning at omega.
struct EquilibriumSolution {
    double e1_bar = 0.0;    // rad
    double e2_bar = 0.0;    // rad
    double r_ij_bar = 0.0;  // m
    double R_i = 0.0;       // m
    StabilityClass stability = StabilityClass::Marginal;
    std::complex<double> eig1;  // Jacobian eigenvalues at the equilibrium
    std::complex<double> eig2;
};

// Certificate function scale and the compact box it is sampled on.
struct ZubovParams {
    double alpha = 1.0;    // 1/rad^2, > 0
    double L = 2.0;        // rad, half-width of the sampled box
    int resolution = 201;  // samples per axis, >= 2
};

struct CertificateReport {
    bool pass = false;
    double worst_value = 0.0;  // max of s(z) = z . f~(z); pass iff < 0
    ErrorState worst_z;
    long samples = 0;
    ZubovParams params;
};

// Two-state error dynamics of the follower relative to its neighbor:
//   de1/dt = omega - u,   de2/dt = [v_j sin(e1 - e2) + v_i sin(e2)] / r_ij - u
// with u = c1*e1 + c2*sin(e2) (unwrapped heading error, the analysis form).
// Throws DegenerateGeometry when r_ij <= 0.
std::pair<double, double> error_dynamics(const PairConfig& cfg, const ErrorState& e,
                                         double r_ij);

// Jacobian of error_dynamics with respect to e (row-major [f1_e1, f1_e2,
// f2_e1, f2_e2]), central finite differences with step 1e-6 rad.
std::array<double, 4> error_jacobian_fd(const PairConfig& cfg, const ErrorState& e,
                                        double r_ij);

// Dynamics shifted so the equilibrium sits at the origin: f~(z) = f(z + e_bar)
// with r_ij frozen at r_ij_bar and omega eliminated through the equilibrium
// condition omega = c1*e1_bar + c2*sin(e2_bar), which makes f~1(0) = 0 exact.
std::pair<double, double> shifted_error_dynamics(const PairConfig& cfg,
                                                 const EquilibriumSolution& eq,
                                                 const ErrorState& z);

// All phase offsets delta in (-pi, pi] where the steady-turn condition
//   omega = c1*delta + c2*sin(e2_bar(delta))
// holds, found by dense-grid bracketing plus bisection. Each root is
// classified through the Jacobian eigenvalues (r_ij held at r_ij_bar).
// Returns an empty list when no steady configuration exists for these gains.
std::vector<EquilibriumSolution> solve_equilibrium(const PairConfig& cfg);

// V(z) = 1 - exp(-alpha*(z1^2 + z2^2)), in [0, 1); saturates at exactly 1.0
// in floating point once the exponential underflows.
double zubov_V(const ErrorState& z, const ZubovParams& p);

// Defect of the identity  dV/dz . f~(z) = -h(z) (1 - V(z))  with
// h(z) = -2*alpha*(z . f~(z)); zero up to roundoff by construction.
double zubov_pde_residual(const PairConfig& cfg, const EquilibriumSolution& eq,
                          const ErrorState& z, const ZubovParams& p);

// Samples s(z) = z . f~(z) on a resolution^2 grid over [-L, L]^2 minus the
// origin; the certificate passes iff s < 0 at every sample (h = -2*alpha*s
// positive definite on the sampled box). Worst sample is always reported.
CertificateReport certify_gains(const PairConfig& cfg, const EquilibriumSolution& eq,
                                const ZubovParams& p);

// Integrate dz/dt = f~(z) with fixed-step RK4 from z0. Stops early once
// |z| <= stop_norm when stop_norm > 0. Returns the final state.
ErrorState integrate_reduced(const PairConfig& cfg, const EquilibriumSolution& eq,
                             ErrorState z0, double dt, double t_end,
                             double stop_norm = 0.0);

}  // namespace circumnav
