#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "lacsum/frequency_set.hpp"

namespace lacsum {

// Additive energy K = #{(a,b,c,d) in [n]^4 : k_a + k_b = k_c + k_d}, counted
// with order and with a = b, c = d allowed, so that K equals the integral of
// |S|^4 over [0,1].
struct EnergyCertificate {
  std::size_t n = 0;
  std::uint64_t energy = 0;
  // ||S||_1 >= ||S||_2^3 / ||S||_4^2 = n^{3/2} / sqrt(K).
  double l1_lower_bound = 0.0;
  double normalized_lower_bound = 0.0;
  bool is_sidon = false;
};

inline constexpr std::size_t kMaxEnergySetSize = 1'000'000;

// 2n^2 - n, the minimum energy of an n-element set.
std::uint64_t minimum_energy(std::size_t n);

// Exact count by hashing pairwise sums (sort-merge beyond the hash
// threshold). Throws CapacityExceeded for n > 10^6 or when the pair table
// cannot be allocated.
std::uint64_t count_quadruple_solutions(const FrequencySet& fs);

bool is_sidon(const FrequencySet& fs);

// First n terms of the Mian-Chowla sequence (greedy Sidon: 1, 2, 4, 8, 13,
// ...). n <= 10^4.
FrequencySet mian_chowla(std::size_t n);

EnergyCertificate holder_lower_bound(const FrequencySet& fs);

namespace detail {
// The two counting strategies behind count_quadruple_solutions.
std::uint64_t energy_by_hash(std::span<const std::uint64_t> k);
std::uint64_t energy_by_sort(std::span<const std::uint64_t> k);
}  // namespace detail

}  // namespace lacsum
