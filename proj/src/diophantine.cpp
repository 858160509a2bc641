#include "lacsum/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <new>
#include <string>
#include <unordered_map>
#include <vector>

#include "lacsum/errors.hpp"

namespace lacsum {

namespace {

__extension__ using u128 = unsigned __int128;

// Above this many elements the pair table is sorted instead of hashed.
constexpr std::size_t kHashThreshold = 4096;

struct U128Hash {
  std::size_t operator()(u128 v) const noexcept {
    // splitmix64 finalizer over the folded halves
    std::uint64_t x = static_cast<std::uint64_t>(v) ^ (static_cast<std::uint64_t>(v >> 64) * 0x9E3779B97F4A7C15ULL);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return static_cast<std::size_t>(x);
  }
};

std::uint64_t checked_energy(u128 total) {
  if (total > UINT64_MAX) throw CapacityExceeded("additive energy exceeds 64 bits");
  return static_cast<std::uint64_t>(total);
}

}  // namespace

namespace detail {

std::uint64_t energy_by_hash(std::span<const std::uint64_t> k) {
  // Ordered representation counts r(v) = #{(a,b) : k_a + k_b = v}.
  std::unordered_map<u128, std::uint64_t, U128Hash> reps;
  reps.reserve(k.size() * (k.size() + 1) / 2);
  for (std::size_t a = 0; a < k.size(); ++a) {
    reps[static_cast<u128>(k[a]) * 2] += 1;
    for (std::size_t b = a + 1; b < k.size(); ++b) {
      reps[static_cast<u128>(k[a]) + k[b]] += 2;
    }
  }
  u128 total = 0;
  for (const auto& [sum, r] : reps) total += static_cast<u128>(r) * r;
  return checked_energy(total);
}

std::uint64_t energy_by_sort(std::span<const std::uint64_t> k) {
  // Pair sums a <= b with the low bit marking the diagonal a == b.
  std::vector<u128> sums;
  sums.reserve(k.size() * (k.size() + 1) / 2);
  for (std::size_t a = 0; a < k.size(); ++a) {
    sums.push_back(((static_cast<u128>(k[a]) * 2) << 1) | 1);
    for (std::size_t b = a + 1; b < k.size(); ++b) {
      sums.push_back((static_cast<u128>(k[a]) + k[b]) << 1);
    }
  }
  std::sort(sums.begin(), sums.end());
  u128 total = 0;
  for (std::size_t i = 0; i < sums.size();) {
    const u128 key = sums[i] >> 1;
    std::uint64_t r = 0;
    for (; i < sums.size() && (sums[i] >> 1) == key; ++i) r += (sums[i] & 1) ? 1 : 2;
    total += static_cast<u128>(r) * r;
  }
  return checked_energy(total);
}

}  // namespace detail

std::uint64_t minimum_energy(std::size_t n) {
  const auto m = static_cast<std::uint64_t>(n);
  return 2 * m * m - m;
}

std::uint64_t count_quadruple_solutions(const FrequencySet& fs) {
  if (fs.size() > kMaxEnergySetSize) {
    throw CapacityExceeded("energy counting supports at most 10^6 frequencies, got " +
                           std::to_string(fs.size()));
  }
  try {
    return fs.size() <= kHashThreshold ? detail::energy_by_hash(fs.freqs())
                                       : detail::energy_by_sort(fs.freqs());
  } catch (const std::bad_alloc&) {
    throw CapacityExceeded("not enough memory for the pair-sum table of " +
                           std::to_string(fs.size()) + " frequencies");
  } catch (const std::length_error&) {
    throw CapacityExceeded("pair-sum table too large");
  }
}

bool is_sidon(const FrequencySet& fs) {
  return count_quadruple_solutions(fs) == minimum_energy(fs.size());
}

FrequencySet mian_chowla(std::size_t n) {
  if (n < 1 || n > 10'000) throw InvalidInput("mian_chowla supports 1 <= n <= 10^4");
  // A set is Sidon iff its positive differences are pairwise distinct; a
  // candidate is accepted when none of its differences to earlier terms is
  // already taken.
  std::vector<std::uint64_t> terms{1};
  std::vector<bool> used_diff(2, false);
  try {
    for (std::uint64_t c = 2; terms.size() < n; ++c) {
      if (used_diff.size() <= c) used_diff.resize(2 * c, false);
      bool ok = true;
      for (auto a : terms) {
        if (used_diff[c - a]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (auto a : terms) used_diff[c - a] = true;
      terms.push_back(c);
    }
  } catch (const std::bad_alloc&) {
    throw CapacityExceeded("not enough memory for the Mian-Chowla difference table");
  }
  return FrequencySet(std::move(terms));
}

EnergyCertificate holder_lower_bound(const FrequencySet& fs) {
  EnergyCertificate cert;
  cert.n = fs.size();
  cert.energy = count_quadruple_solutions(fs);
  const double n = static_cast<double>(fs.size());
  const double root_k = std::sqrt(static_cast<double>(cert.energy));
  cert.l1_lower_bound = n * std::sqrt(n) / root_k;
  cert.normalized_lower_bound = n / root_k;
  cert.is_sidon = cert.energy == minimum_energy(fs.size());
  return cert;
}

}  // namespace lacsum
