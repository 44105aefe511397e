#pragma once

#include <string>
#include <string_view>

#include "agecode/scenario.hpp"

namespace agecode {

/// Parse one flat `key = value` configuration file into scenario parameters.
/// Lines starting with '#' (and blank lines) are ignored; unknown or
/// duplicate keys are rejected. Keys are documented in the README; an empty
/// file yields the defaults. ConfigError on any problem.
ScenarioParams parse_config(const std::string& path);

/// Apply a single `key=value` assignment (the CLI's --set option) to params.
/// Uses the same key table and validation as parse_config.
void apply_assignment(ScenarioParams& params, std::string_view key,
                      std::string_view value);

/// Parse the `single:...|multihop:...|multipath:...` network syntax.
ErasureNetwork parse_network(std::string_view text);

}  // namespace agecode
