#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

namespace lacsum::cli {

// Runs one subcommand from its fully resolved configuration and returns the
// result payload. When side_outputs is false, CSV and report files named in
// the config are not written (used by replay).
nlohmann::json execute(std::string_view command, const nlohmann::json& config,
                       bool side_outputs = true);

// Whether the command's result depends on a random seed.
bool uses_seed(std::string_view command, const nlohmann::json& config);

}  // namespace lacsum::cli
