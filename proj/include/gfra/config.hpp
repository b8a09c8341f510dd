#pragma once

#include <iosfwd>
#include <string>

#include "gfra/harness.hpp"

namespace gfra {

/// Parses the flat key-value scenario format (key = value, '#' comments).
/// Every key has the reference default, so an empty config is valid. The
/// parser also accepts a summary.json produced by a previous run, keyed off
/// a leading '{'. Throws ConfigError with the offending field path.
Scenario load_scenario(std::istream& in, const std::string& source_name);
Scenario load_scenario_file(const std::string& path);

/// Applies a single key/value override using the config-file key names.
void apply_override(Scenario& scenario, const std::string& key, const std::string& value);

/// The scenario as config-file text; load_scenario round-trips it.
std::string scenario_to_config_text(const Scenario& scenario);

}  // namespace gfra
