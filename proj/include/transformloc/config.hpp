#pragma once

#include "transformloc/scenario.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace transformloc {

using Json = nlohmann::ordered_json;

/// Reads and validates a scenario file. Unknown keys are rejected and omitted
/// optional keys take their defaults. Throws ConfigError (the field path is
/// "<file>" for a missing or unparsable file).
ScenarioConfig load_config(const std::filesystem::path &path);

ScenarioConfig config_from_json(const Json &j);
ScenarioConfig parse_config(std::string_view text);

/// Full scenario with every default spelled out, in a fixed key order.
Json config_to_json(const ScenarioConfig &config);
std::string dump_config(const ScenarioConfig &config);

}  // namespace transformloc
