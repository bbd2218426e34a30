#include "circumnav/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "circumnav/errors.hpp"

namespace circumnav {

namespace {

constexpr double kWidth = 820.0;
constexpr double kHeight = 560.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 790.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 505.0;

const char* kPalette[] = {"#1f6fb4", "#d1495b", "#2e8b57", "#b8860b",
                          "#6a4fa3", "#00838f", "#c05a28", "#505a70"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void take(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(hi > lo)) {
            hi = lo + 1.0;
            lo -= 1.0;
            return;
        }
        const double margin = 0.05 * (hi - lo);
        lo -= margin;
        hi += margin;
    }
    double span() const { return hi - lo; }
};

// Tick step of the form {1, 2, 5} * 10^k giving 4-8 ticks across the range.
double nice_step(double span) {
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    if (frac < 1.5) return mag;
    if (frac < 3.5) return 2.0 * mag;
    if (frac < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

class Panel {
public:
    Panel(std::string title, std::string xlabel, std::string ylabel, Range xr, Range yr,
          bool equal_aspect)
        : xr_(xr), yr_(yr) {
        xr_.pad();
        yr_.pad();
        if (equal_aspect) {
            // Stretch the narrower data range so a meter spans the same
            // number of pixels on both axes.
            const double sx = (kRight - kLeft) / xr_.span();
            const double sy = (kBottom - kTop) / yr_.span();
            if (sx < sy) {
                const double mid = 0.5 * (yr_.lo + yr_.hi);
                const double half = 0.5 * (kBottom - kTop) / sx;
                yr_.lo = mid - half;
                yr_.hi = mid + half;
            } else {
                const double mid = 0.5 * (xr_.lo + xr_.hi);
                const double half = 0.5 * (kRight - kLeft) / sy;
                xr_.lo = mid - half;
                xr_.hi = mid + half;
            }
        }
        body_ += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" +
                 fmt(kRight - kLeft) + "\" height=\"" + fmt(kBottom - kTop) +
                 "\" fill=\"#fdfdfd\" stroke=\"#333\" stroke-width=\"1\"/>\n";
        axes();
        text(0.5 * (kLeft + kRight), 24.0, title, 16, "middle", "#111");
        text(0.5 * (kLeft + kRight), kHeight - 12.0, xlabel, 13, "middle", "#333");
        body_ += "<text x=\"18\" y=\"" + fmt(0.5 * (kTop + kBottom)) +
                 "\" font-size=\"13\" fill=\"#333\" text-anchor=\"middle\" "
                 "transform=\"rotate(-90 18 " +
                 fmt(0.5 * (kTop + kBottom)) + ")\">" + ylabel + "</text>\n";
    }

    double px(double x) const {
        return kLeft + (x - xr_.lo) / xr_.span() * (kRight - kLeft);
    }
    double py(double y) const {
        return kBottom - (y - yr_.lo) / yr_.span() * (kBottom - kTop);
    }

    void polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                  const std::string& color, double width, bool dashed = false) {
        const size_t n = xs.size();
        const size_t stride = std::max<size_t>(1, n / 2000);
        std::string pts;
        for (size_t k = 0; k < n; k += stride) {
            pts += fmt(px(xs[k])) + "," + fmt(py(ys[k])) + " ";
        }
        if ((n - 1) % stride != 0) {
            pts += fmt(px(xs[n - 1])) + "," + fmt(py(ys[n - 1]));
        }
        body_ += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
                 fmt(width) + "\"";
        if (dashed) body_ += " stroke-dasharray=\"6 4\"";
        body_ += " points=\"" + pts + "\"/>\n";
    }

    void hline(double y, const std::string& color) {
        std::vector<double> xs{xr_.lo, xr_.hi};
        std::vector<double> ys{y, y};
        polyline(xs, ys, color, 1.0, true);
    }

    void marker_cross(double x, double y, const std::string& color) {
        const double cx = px(x);
        const double cy = py(y);
        body_ += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) +
                 "\" r=\"6\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
        body_ += "<line x1=\"" + fmt(cx - 9) + "\" y1=\"" + fmt(cy) + "\" x2=\"" +
                 fmt(cx + 9) + "\" y2=\"" + fmt(cy) + "\" stroke=\"" + color +
                 "\" stroke-width=\"1.5\"/>\n";
        body_ += "<line x1=\"" + fmt(cx) + "\" y1=\"" + fmt(cy - 9) + "\" x2=\"" +
                 fmt(cx) + "\" y2=\"" + fmt(cy + 9) + "\" stroke=\"" + color +
                 "\" stroke-width=\"1.5\"/>\n";
    }

    void dot(double x, double y, const std::string& color) {
        body_ += "<circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) +
                 "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
    }

    void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
        double y = kTop + 16.0;
        const double x = kRight - 150.0;
        for (const auto& [label, color] : entries) {
            body_ += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(y - 4) + "\" x2=\"" +
                     fmt(x + 26) + "\" y2=\"" + fmt(y - 4) + "\" stroke=\"" + color +
                     "\" stroke-width=\"2.5\"/>\n";
            text(x + 34, y, label, 12, "start", "#222");
            y += 18.0;
        }
    }

    void write(const std::filesystem::path& path) const {
        std::ofstream out(path);
        if (!out) {
            throw ConfigError("plot: cannot open " + path.string() + " for writing");
        }
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
            << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
            << kHeight << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body_ << "</svg>\n";
        if (!out) {
            throw ConfigError("plot: write failed for " + path.string());
        }
    }

private:
    void text(double x, double y, const std::string& s, int size,
              const std::string& anchor, const std::string& color) {
        body_ += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" font-size=\"" +
                 std::to_string(size) + "\" font-family=\"sans-serif\" fill=\"" + color +
                 "\" text-anchor=\"" + anchor + "\">" + s + "</text>\n";
    }

    void axes() {
        const double sx = nice_step(xr_.span());
        for (double v = std::ceil(xr_.lo / sx) * sx; v <= xr_.hi + 1e-9 * sx; v += sx) {
            const double gx = px(v);
            body_ += "<line x1=\"" + fmt(gx) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" +
                     fmt(gx) + "\" y2=\"" + fmt(kBottom) +
                     "\" stroke=\"#ddd\" stroke-width=\"0.7\"/>\n";
            text(gx, kBottom + 18.0, fmt(v == 0.0 ? 0.0 : v), 11, "middle", "#333");
        }
        const double sy = nice_step(yr_.span());
        for (double v = std::ceil(yr_.lo / sy) * sy; v <= yr_.hi + 1e-9 * sy; v += sy) {
            const double gy = py(v);
            body_ += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(gy) + "\" x2=\"" +
                     fmt(kRight) + "\" y2=\"" + fmt(gy) +
                     "\" stroke=\"#ddd\" stroke-width=\"0.7\"/>\n";
            text(kLeft - 8.0, gy + 4.0, fmt(v == 0.0 ? 0.0 : v), 11, "end", "#333");
        }
    }

    Range xr_;
    Range yr_;
    std::string body_;
};

std::vector<std::pair<std::string, std::string>> legend_entries(
    const std::vector<int>& ids, const CommGraph& graph) {
    std::vector<std::pair<std::string, std::string>> entries;
    for (size_t i = 0; i < ids.size(); ++i) {
        std::string label = "agent " + std::to_string(ids[i]);
        if (graph.is_leader(static_cast<int>(i))) label += " (leader)";
        entries.emplace_back(label, kPalette[i % std::size(kPalette)]);
    }
    return entries;
}

}  // namespace

void emit_plots(const SimLog& log, const RunReport& report, const Scenario& scenario,
                const std::filesystem::path& dir) {
    if (log.t.empty() || log.x.empty()) {
        throw ConfigError("plot: empty log");
    }
    const size_t n = log.x.size();
    const auto entries = legend_entries(scenario.ids, scenario.graph);

    {
        Range xr, yr;
        for (size_t i = 0; i < n; ++i) {
            for (double v : log.x[i]) xr.take(v);
            for (double v : log.y[i]) yr.take(v);
        }
        xr.take(scenario.target.x);
        yr.take(scenario.target.y);
        Panel p("Trajectories (" + scenario.name + ")", "x [m]", "y [m]", xr, yr, true);
        for (size_t i = 0; i < n; ++i) {
            p.polyline(log.x[i], log.y[i], kPalette[i % std::size(kPalette)], 1.6);
            p.dot(log.x[i].front(), log.y[i].front(), kPalette[i % std::size(kPalette)]);
        }
        p.marker_cross(scenario.target.x, scenario.target.y, "#111");
        p.legend(entries);
        p.write(dir / (scenario.name + "_trajectories.svg"));
    }
    {
        Range xr, yr;
        for (double v : log.t) xr.take(v);
        for (size_t i = 0; i < n; ++i) {
            for (double v : log.r_target[i]) yr.take(v);
        }
        Panel p("Distance to target (" + scenario.name + ")", "t [s]", "r [m]", xr, yr,
                false);
        for (size_t i = 0; i < n; ++i) {
            p.polyline(log.t, log.r_target[i], kPalette[i % std::size(kPalette)], 1.6);
            if (report.agents.size() == n && report.agents[i].radius.settled) {
                p.hline(report.agents[i].radius.value, "#999");
            }
        }
        p.legend(entries);
        p.write(dir / (scenario.name + "_radii.svg"));
    }
    {
        Range xr, yr;
        for (double v : log.t) xr.take(v);
        for (size_t i = 0; i < n; ++i) {
            for (double v : log.u[i]) yr.take(v);
        }
        Panel p("Applied turn rates (" + scenario.name + ")", "t [s]", "u [rad/s]", xr,
                yr, false);
        for (size_t i = 0; i < n; ++i) {
            p.polyline(log.t, log.u[i], kPalette[i % std::size(kPalette)], 1.6);
        }
        p.legend(entries);
        p.write(dir / (scenario.name + "_controls.svg"));
    }
}

}  // namespace circumnav
