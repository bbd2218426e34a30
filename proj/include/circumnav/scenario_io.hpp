#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "circumnav/simulator.hpp"

namespace circumnav {

// Parse, assemble, and validate a scenario from a JSON config file (// and
// /* */ comments allowed). `overrides` are dotted-path assignments applied to
// the parsed document before construction, e.g. "gains.c1=0.8",
// "agents.0.speed=1.2", "t_end=300". Validation warnings (never fatal) are
// appended to *warnings when given.
Scenario load_scenario(const std::filesystem::path& path,
                       const std::vector<std::string>& overrides = {},
                       std::vector<std::string>* warnings = nullptr);

// Same from in-memory text; `origin` names the source in error messages.
Scenario parse_scenario(const std::string& json_text, const std::string& origin,
                        const std::vector<std::string>& overrides = {},
                        std::vector<std::string>* warnings = nullptr);

}  // namespace circumnav
