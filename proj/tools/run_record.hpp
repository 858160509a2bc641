#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

namespace lacsum::cli {

// SHA-1 of "blob <size>\0<content>", as git hashes file contents.
std::string git_blob_sha1(std::string_view content);

// UTC, ISO 8601 with milliseconds.
std::string utc_timestamp();

// Writes record.json under runs_dir/<compact timestamp>-<hash prefix>/ and
// returns that directory.
std::filesystem::path write_run_record(const std::filesystem::path& runs_dir,
                                       const nlohmann::json& record);

nlohmann::json read_run_record(const std::filesystem::path& run_dir);

}  // namespace lacsum::cli
