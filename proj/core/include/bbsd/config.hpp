#pragma once

#include <filesystem>
#include <string>

#include "bbsd/signalgen.hpp"

namespace bbsd {

/// Reads a JSON object whose keys are ScenarioConfig field names. Missing
/// keys keep their defaults; unknown keys are rejected. Throws ConfigError.
ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(const std::string& json_text);

/// JSON echo of every field, used in CSV headers.
std::string to_json(const ScenarioConfig& config);

}  // namespace bbsd
