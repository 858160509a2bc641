#pragma once

#include <string>

#include "json.hpp"

namespace lacsum::cli {

// Serializes like nlohmann's dump() but prints every double with 17
// significant digits (always with a '.' or exponent so it reads back as a
// double). Non-finite values become null.
std::string dump_json(const nlohmann::json& j, int indent = 2);

}  // namespace lacsum::cli
