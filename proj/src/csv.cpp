#include "circumnav/csv.hpp"

#include <cstdio>
#include <fstream>
#include <string>

#include "circumnav/errors.hpp"

namespace circumnav {

namespace {

// %.17g round-trips every double exactly through decimal.
void append_double(std::string& row, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    row += buf;
}

}  // namespace

void emit_csv(const SimLog& log, const std::vector<int>& ids,
              const std::filesystem::path& path) {
    if (log.t.empty() || log.x.size() != ids.size()) {
        throw ConfigError("csv: empty log or id/agent count mismatch");
    }
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("csv: cannot open " + path.string() + " for writing");
    }

    std::string row = "t";
    for (int id : ids) {
        const std::string tag = std::to_string(id);
        row += ",x_" + tag + ",y_" + tag + ",gamma_" + tag + ",u_" + tag + ",r_" + tag;
    }
    out << row << '\n';

    for (size_t k = 0; k < log.t.size(); ++k) {
        row.clear();
        append_double(row, log.t[k]);
        for (size_t i = 0; i < ids.size(); ++i) {
            row += ',';
            append_double(row, log.x[i][k]);
            row += ',';
            append_double(row, log.y[i][k]);
            row += ',';
            append_double(row, log.gamma[i][k]);
            row += ',';
            append_double(row, log.u[i][k]);
            row += ',';
            append_double(row, log.r_target[i][k]);
        }
        out << row << '\n';
    }
    if (!out) {
        throw ConfigError("csv: write failed for " + path.string());
    }
}

}  // namespace circumnav
