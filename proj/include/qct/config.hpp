#pragma once

#include <string>

#include "qct/netsim.hpp"

namespace qct {

// Parses a scenario document (JSON). Unknown keys are rejected so config
// typos fail loudly. Missing fields take the documented defaults; the
// result is validated before it is returned.
ScenarioConfig parse_config(const std::string& text);

ScenarioConfig load_config_file(const std::string& path);

// The fully-defaulted scenario as canonical JSON text (2-space indent).
// Reports embed this so results are self-describing.
std::string scenario_to_json(const ScenarioConfig& config);

} // namespace qct
