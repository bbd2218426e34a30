#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "circumnav/simulator.hpp"

namespace circumnav {

// Continuous version of a wrapped angular series: each sample is moved by a
// multiple of 2*pi so consecutive steps stay within (-pi, pi]. Assumes the
// underlying signal moves less than pi between samples.
std::vector<double> unwrap_series(const std::vector<double>& wrapped);

struct SettleResult {
    bool settled = false;
    double value = 0.0;        // mean over the trailing window
    double settle_time = 0.0;  // start of the quiet suffix; t_end if never
    double spread = 0.0;       // peak-to-peak over the trailing window
};

// Trailing-window convergence detector. The series counts as settled when
// its peak-to-peak variation over the final `window` seconds is below
// rel_tol * |trailing mean|. settle_time is the earliest time from which the
// whole suffix stays inside that band (suffix spread is monotone, so this is
// well defined). Throws ConfigError when the series spans less than one window.
SettleResult detect_settling(const std::vector<double>& t,
                             const std::vector<double>& series,
                             const SettlingParams& p);

struct AgentReport {
    int id = 0;
    bool leader = false;
    SettleResult radius;     // distance-to-target series
    SettleResult turn_rate;  // applied-control series
    // |omega_component - c1*e1 - c2*sin(e2)| from trailing means; followers only.
    std::optional<double> steady_residual;
    // r(t) - settled radius; empty when the radius never settled.
    std::vector<double> radial_error;
    // max |radial_error| from settle_time onward (0 when never settled).
    double max_radial_error_settled = 0.0;
};

struct ComponentReport {
    int leader_id = 0;
    std::vector<int> member_ids;
    double common_rate = 0.0;  // mean of settled member turn rates
    double rate_spread = 0.0;  // max |u_i - common_rate|
    bool rate_synchronized = false;
};

struct RunReport {
    std::string scenario;
    std::vector<AgentReport> agents;
    std::vector<ComponentReport> comps;
    bool all_settled = false;
    std::vector<std::string> certificate_notes;  // filled by callers that certify
};

// Pure function of (log, graph, scenario metadata): settling for every radius
// and control series, per-component common rates, steady-state residuals.
RunReport summarize(const SimLog& log, const CommGraph& graph, const Scenario& s);

// Serialize the report (without the bulky radial-error series; their terminal
// maxima are included instead) as JSON.
void write_report_json(const RunReport& report, const std::filesystem::path& path);

}  // namespace circumnav
