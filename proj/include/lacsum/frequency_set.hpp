#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lacsum {

// A sorted set of distinct positive integer frequencies k_1 < ... < k_n.
//
// Frequencies are unsigned 64-bit; anything larger is rejected at the
// boundary. A FrequencySet is never empty.
class FrequencySet {
 public:
  // Sorts and validates. Throws InvalidInput on empty input, a zero entry or
  // a duplicate.
  explicit FrequencySet(std::vector<std::uint64_t> values);
  FrequencySet(std::initializer_list<std::uint64_t> values)
      : FrequencySet(std::vector<std::uint64_t>(values)) {}

  std::span<const std::uint64_t> freqs() const { return freqs_; }
  const std::vector<std::uint64_t>& values() const { return freqs_; }
  std::size_t size() const { return freqs_.size(); }
  std::uint64_t operator[](std::size_t i) const { return freqs_[i]; }
  std::uint64_t min() const { return freqs_.front(); }
  std::uint64_t max() const { return freqs_.back(); }

  // Smallest ratio k_{j+1}/k_j, or nullopt for a singleton.
  std::optional<double> gap_ratio() const;

  // k_j + offset for every j. Throws InvalidInput if an entry would become
  // non-positive and OverflowError past 2^64 - 1.
  FrequencySet shifted(std::int64_t offset) const;
  // c * k_j for every j, c >= 1.
  FrequencySet dilated(std::uint64_t factor) const;

  friend bool operator==(const FrequencySet&, const FrequencySet&) = default;
  friend auto operator<=>(const FrequencySet& a, const FrequencySet& b) {
    return a.freqs_ <=> b.freqs_;
  }

 private:
  std::vector<std::uint64_t> freqs_;
};

// Signed entry point: rejects non-positive values with InvalidInput.
FrequencySet make_frequency_set(std::span<const std::int64_t> values);
inline FrequencySet make_frequency_set(std::initializer_list<std::int64_t> values) {
  return make_frequency_set(std::span<const std::int64_t>(values.begin(), values.size()));
}

// {q, q^2, ..., q^n}. Throws OverflowError when q^n does not fit in 64 bits.
FrequencySet lacunary_set(std::uint64_t q, std::size_t n);

// "1,2,5" (whitespace tolerated).
FrequencySet parse_frequency_list(std::string_view text);
// One positive integer per line; '#' starts a comment; blank lines ignored.
FrequencySet read_frequency_file(std::istream& in);
void write_frequency_file(std::ostream& out, const FrequencySet& fs);

}  // namespace lacsum
