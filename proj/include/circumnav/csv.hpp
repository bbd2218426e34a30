#pragma once

#include <filesystem>
#include <vector>

#include "circumnav/simulator.hpp"

namespace circumnav {

// One row per time sample: t, then x_<id>, y_<id>, gamma_<id>, u_<id>,
// r_<id> for each agent in scenario order. Full double precision, decimal
// ASCII, header row first. Throws ConfigError on an empty log or I/O failure.
void emit_csv(const SimLog& log, const std::vector<int>& ids,
              const std::filesystem::path& path);

}  // namespace circumnav
