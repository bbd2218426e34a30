#include "circumnav/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "circumnav/errors.hpp"

namespace circumnav {

namespace {

struct WindowStats {
    size_t begin = 0;
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

// Stats over the trailing `window` seconds. Requires a full window of data.
WindowStats trailing_stats(const std::vector<double>& t, const std::vector<double>& y,
                           double window) {
    const double t_begin = t.back() - window;
    const auto it = std::lower_bound(t.begin(), t.end(), t_begin);
    WindowStats ws;
    ws.begin = static_cast<size_t>(it - t.begin());
    ws.lo = std::numeric_limits<double>::infinity();
    ws.hi = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (size_t k = ws.begin; k < y.size(); ++k) {
        sum += y[k];
        ws.lo = std::min(ws.lo, y[k]);
        ws.hi = std::max(ws.hi, y[k]);
    }
    ws.mean = sum / static_cast<double>(y.size() - ws.begin);
    return ws;
}

}  // namespace

std::vector<double> unwrap_series(const std::vector<double>& wrapped) {
    std::vector<double> out;
    out.reserve(wrapped.size());
    for (size_t k = 0; k < wrapped.size(); ++k) {
        if (k == 0) {
            out.push_back(wrapped[0]);
        } else {
            out.push_back(out.back() + wrap_angle(wrapped[k] - wrapped[k - 1]));
        }
    }
    return out;
}

SettleResult detect_settling(const std::vector<double>& t,
                             const std::vector<double>& series,
                             const SettlingParams& p) {
    if (t.size() != series.size() || t.size() < 2) {
        throw ConfigError("detect_settling: series and time grid must share >= 2 samples");
    }
    if (!(p.window > 0.0) || !(p.rel_tol > 0.0)) {
        throw ConfigError("detect_settling: window and rel_tol must be > 0");
    }
    if (t.back() - t.front() < p.window) {
        throw ConfigError("detect_settling: series spans less than one window (" +
                          std::to_string(t.back() - t.front()) + " s < " +
                          std::to_string(p.window) + " s); shorten the window or run longer");
    }
    SettleResult res;
    res.settle_time = t.back();

    const WindowStats ws = trailing_stats(t, series, p.window);
    res.value = ws.mean;
    res.spread = ws.hi - ws.lo;
    const double tol = p.rel_tol * std::max(std::abs(ws.mean), 1e-12);
    res.settled = res.spread <= tol;
    if (!res.settled) {
        return res;
    }
    // Earliest time from which the whole suffix stays inside the band. The
    // suffix spread only shrinks as the suffix shortens, so scan from the end.
    double lo = series.back();
    double hi = series.back();
    size_t first_ok = series.size() - 1;
    for (size_t k = series.size(); k-- > 0;) {
        lo = std::min(lo, series[k]);
        hi = std::max(hi, series[k]);
        if (hi - lo > tol) break;
        first_ok = k;
    }
    res.settle_time = t[first_ok];
    return res;
}

RunReport summarize(const SimLog& log, const CommGraph& graph, const Scenario& s) {
    const size_t n = log.x.size();
    RunReport rep;
    rep.scenario = s.name;
    rep.all_settled = true;

    for (size_t i = 0; i < n; ++i) {
        AgentReport ar;
        ar.id = s.ids[i];
        ar.leader = graph.is_leader(static_cast<int>(i));
        ar.radius = detect_settling(log.t, log.r_target[i], s.settling);
        ar.turn_rate = detect_settling(log.t, log.u[i], s.settling);
        if (ar.radius.settled) {
            ar.radial_error.reserve(log.t.size());
            for (double r : log.r_target[i]) ar.radial_error.push_back(r - ar.radius.value);
            for (size_t k = 0; k < log.t.size(); ++k) {
                if (log.t[k] < ar.radius.settle_time) continue;
                ar.max_radial_error_settled =
                    std::max(ar.max_radial_error_settled, std::abs(ar.radial_error[k]));
            }
        }
        rep.all_settled = rep.all_settled && ar.radius.settled && ar.turn_rate.settled;
        rep.agents.push_back(std::move(ar));
    }

    for (const auto& group : components(graph)) {
        ComponentReport cr;
        cr.leader_id = s.ids[static_cast<size_t>(group.front())];
        double sum = 0.0;
        long settled_count = 0;
        bool all_members_settled = true;
        for (int idx : group) {
            cr.member_ids.push_back(s.ids[static_cast<size_t>(idx)]);
            const SettleResult& sr = rep.agents[static_cast<size_t>(idx)].turn_rate;
            if (sr.settled) {
                sum += sr.value;
                ++settled_count;
            } else {
                all_members_settled = false;
            }
        }
        cr.common_rate = settled_count > 0 ? sum / static_cast<double>(settled_count) : 0.0;
        for (int idx : group) {
            const SettleResult& sr = rep.agents[static_cast<size_t>(idx)].turn_rate;
            if (sr.settled) {
                cr.rate_spread = std::max(cr.rate_spread,
                                          std::abs(sr.value - cr.common_rate));
            }
        }
        cr.rate_synchronized =
            all_members_settled && cr.rate_spread <= s.settling.rate_sync_tol;
        rep.comps.push_back(std::move(cr));
    }

    // Steady-turn residual per follower from trailing error means: the applied
    // control c1*e1 + c2*sin(e2) should equal the component's common rate.
    const std::vector<int> roots = root_of(graph);
    for (size_t i = 0; i < n; ++i) {
        if (graph.is_leader(static_cast<int>(i))) continue;
        const size_t j = static_cast<size_t>(graph.neighbor[i]);

        std::vector<double> e1(log.t.size());
        for (size_t k = 0; k < log.t.size(); ++k) e1[k] = log.gamma[j][k] - log.gamma[i][k];
        const std::vector<double> lam = unwrap_series(log.lambda_edge[i]);
        std::vector<double> e2(log.t.size());
        for (size_t k = 0; k < log.t.size(); ++k) e2[k] = lam[k] - log.gamma[i][k];

        const double e1_bar = trailing_stats(log.t, e1, s.settling.window).mean;
        const double e2_bar = trailing_stats(log.t, e2, s.settling.window).mean;
        const double e1_eff =
            s.heading_mode == HeadingErrorMode::Wrapped ? wrap_angle(e1_bar) : e1_bar;

        double omega = 0.0;
        for (const ComponentReport& cr : rep.comps) {
            if (cr.leader_id == s.ids[static_cast<size_t>(roots[i])]) omega = cr.common_rate;
        }
        rep.agents[i].steady_residual =
            std::abs(omega - s.gains.c1 * e1_eff - s.gains.c2 * std::sin(e2_bar));
    }
    return rep;
}

void write_report_json(const RunReport& report, const std::filesystem::path& path) {
    nlohmann::json j;
    j["scenario"] = report.scenario;
    j["all_settled"] = report.all_settled;
    j["agents"] = nlohmann::json::array();
    for (const AgentReport& ar : report.agents) {
        nlohmann::json a;
        a["id"] = ar.id;
        a["leader"] = ar.leader;
        a["radius"] = {{"settled", ar.radius.settled},
                       {"value", ar.radius.value},
                       {"settle_time", ar.radius.settle_time},
                       {"spread", ar.radius.spread}};
        a["turn_rate"] = {{"settled", ar.turn_rate.settled},
                          {"value", ar.turn_rate.value},
                          {"settle_time", ar.turn_rate.settle_time},
                          {"spread", ar.turn_rate.spread}};
        if (ar.steady_residual) a["steady_residual"] = *ar.steady_residual;
        if (!ar.radial_error.empty()) {
            a["max_radial_error_settled"] = ar.max_radial_error_settled;
        }
        j["agents"].push_back(std::move(a));
    }
    j["components"] = nlohmann::json::array();
    for (const ComponentReport& cr : report.comps) {
        j["components"].push_back({{"leader_id", cr.leader_id},
                                   {"members", cr.member_ids},
                                   {"common_rate", cr.common_rate},
                                   {"rate_spread", cr.rate_spread},
                                   {"rate_synchronized", cr.rate_synchronized}});
    }
    if (!report.certificate_notes.empty()) {
        j["certificate_notes"] = report.certificate_notes;
    }
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("report: cannot open " + path.string() + " for writing");
    }
    out << j.dump(2) << '\n';
}

}  // namespace circumnav
