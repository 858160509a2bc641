#include "run_record.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json_format.hpp"
#include "lacsum/errors.hpp"

namespace lacsum::cli {

std::string git_blob_sha1(std::string_view content) {
  std::string blob = "blob " + std::to_string(content.size());
  blob.push_back('\0');
  blob.append(content);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), digest, &len, EVP_sha1(), nullptr) != 1)
    throw Error("SHA-1 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t secs = std::chrono::system_clock::to_time_t(now);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

std::filesystem::path write_run_record(const std::filesystem::path& runs_dir,
                                       const nlohmann::json& record) {
  std::string stamp = record.at("started").get<std::string>();
  std::erase_if(stamp, [](char c) { return c == '-' || c == ':' || c == '.'; });
  const std::string base = stamp + "-" + record.at("input_hash").get<std::string>().substr(0, 12);

  std::filesystem::create_directories(runs_dir);
  std::filesystem::path dir = runs_dir / base;
  for (int suffix = 1; !std::filesystem::create_directory(dir); ++suffix)
    dir = runs_dir / (base + "-" + std::to_string(suffix));

  std::ofstream out(dir / "record.json");
  out << dump_json(record) << '\n';
  if (!out) throw Error("cannot write run record in " + dir.string());
  return dir;
}

nlohmann::json read_run_record(const std::filesystem::path& run_dir) {
  std::ifstream in(run_dir / "record.json");
  if (!in) throw InvalidInput("no record.json in " + run_dir.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed run record: " + std::string(e.what()));
  }
}

}  // namespace lacsum::cli
