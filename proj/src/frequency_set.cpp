#include "lacsum/frequency_set.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "lacsum/errors.hpp"

namespace lacsum {

FrequencySet::FrequencySet(std::vector<std::uint64_t> values) : freqs_(std::move(values)) {
  if (freqs_.empty()) throw InvalidInput("frequency set must be nonempty");
  std::sort(freqs_.begin(), freqs_.end());
  if (freqs_.front() == 0) throw InvalidInput("frequencies must be positive, got 0");
  auto dup = std::adjacent_find(freqs_.begin(), freqs_.end());
  if (dup != freqs_.end()) {
    throw InvalidInput("duplicate frequency " + std::to_string(*dup));
  }
}

std::optional<double> FrequencySet::gap_ratio() const {
  if (freqs_.size() < 2) return std::nullopt;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < freqs_.size(); ++j) {
    best = std::min(best, static_cast<double>(freqs_[j]) / static_cast<double>(freqs_[j - 1]));
  }
  return best;
}

FrequencySet FrequencySet::shifted(std::int64_t offset) const {
  std::vector<std::uint64_t> out;
  out.reserve(freqs_.size());
  for (auto k : freqs_) {
    if (offset >= 0) {
      std::uint64_t v;
      if (__builtin_add_overflow(k, static_cast<std::uint64_t>(offset), &v)) {
        throw OverflowError("shifted frequency exceeds 64-bit range");
      }
      out.push_back(v);
    } else {
      // -(offset + 1) + 1 avoids negating INT64_MIN.
      const std::uint64_t down = static_cast<std::uint64_t>(-(offset + 1)) + 1;
      if (k <= down) throw InvalidInput("shift makes a frequency non-positive");
      out.push_back(k - down);
    }
  }
  return FrequencySet(std::move(out));
}

FrequencySet FrequencySet::dilated(std::uint64_t factor) const {
  if (factor == 0) throw InvalidInput("dilation factor must be positive");
  std::vector<std::uint64_t> out;
  out.reserve(freqs_.size());
  for (auto k : freqs_) {
    std::uint64_t v;
    if (__builtin_mul_overflow(k, factor, &v)) {
      throw OverflowError("dilated frequency exceeds 64-bit range");
    }
    out.push_back(v);
  }
  return FrequencySet(std::move(out));
}

FrequencySet make_frequency_set(std::span<const std::int64_t> values) {
  std::vector<std::uint64_t> out;
  out.reserve(values.size());
  for (auto v : values) {
    if (v <= 0) throw InvalidInput("frequencies must be positive, got " + std::to_string(v));
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return FrequencySet(std::move(out));
}

FrequencySet lacunary_set(std::uint64_t q, std::size_t n) {
  if (q < 2) throw InvalidInput("lacunary ratio q must be >= 2");
  if (n < 1) throw InvalidInput("lacunary length n must be >= 1");
  std::vector<std::uint64_t> out;
  out.reserve(n);
  std::uint64_t k = 1;
  for (std::size_t j = 1; j <= n; ++j) {
    if (__builtin_mul_overflow(k, q, &k)) {
      throw OverflowError(std::to_string(q) + "^" + std::to_string(j) +
                          " exceeds the 64-bit frequency range");
    }
    out.push_back(k);
  }
  return FrequencySet(std::move(out));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_frequency(std::string_view token) {
  token = trim(token);
  if (token.empty()) throw InvalidInput("empty frequency entry");
  if (token.front() == '-') {
    throw InvalidInput("frequencies must be positive, got " + std::string(token));
  }
  if (token.front() == '+') token.remove_prefix(1);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec == std::errc::result_out_of_range) {
    throw InvalidInput("frequency " + std::string(token) + " exceeds the 64-bit range");
  }
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw InvalidInput("not an integer frequency: '" + std::string(token) + "'");
  }
  return v;
}

}  // namespace

FrequencySet parse_frequency_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  while (true) {
    auto comma = text.find(',');
    out.push_back(parse_frequency(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return FrequencySet(std::move(out));
}

FrequencySet read_frequency_file(std::istream& in) {
  std::vector<std::uint64_t> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    out.push_back(parse_frequency(view));
  }
  return FrequencySet(std::move(out));
}

void write_frequency_file(std::ostream& out, const FrequencySet& fs) {
  for (auto k : fs.freqs()) out << k << '\n';
}

}  // namespace lacsum
