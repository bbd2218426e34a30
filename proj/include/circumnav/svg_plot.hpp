#pragma once

#include <filesystem>

#include "circumnav/report.hpp"
#include "circumnav/simulator.hpp"

namespace circumnav {

// Three static SVG panels for a finished run, written into dir:
//   <name>_trajectories.svg  XY paths with the target marked
//   <name>_radii.svg         distance to target vs time, settled levels dashed
//   <name>_controls.svg      applied turn rate vs time
// Throws ConfigError on an empty log or I/O failure.
void emit_plots(const SimLog& log, const RunReport& report, const Scenario& scenario,
                const std::filesystem::path& dir);

}  // namespace circumnav
