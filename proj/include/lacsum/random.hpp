#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace lacsum::rng {

using Block = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds (Salmon et al., "Parallel random numbers: as easy
// as 1, 2, 3"). Stateless: the output depends only on (counter, key).
Block philox4x32_10(Block counter, Key key);

// Independent sub-streams drawn from one seed.
enum class Domain : std::uint32_t {
  theta = 1,
  gaussian_z = 2,
  gaussian_y = 3,
  gaussian_sim = 4,
  search = 5,
  pilot = 6,
};

// 128 random bits for sample `lane` of chunk `chunk`. A sample is a pure
// function of (seed, domain, chunk, lane), so any partition of chunks over
// threads reproduces the same stream.
std::array<std::uint64_t, 2> draw(std::uint64_t seed, Domain domain, std::uint64_t chunk,
                                  std::uint32_t lane);

// Uniform on the open interval (0, 1) with 53 random bits.
inline double uniform_open(std::uint64_t word) {
  return (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
}

// Two independent standard normal variates (Box-Muller).
std::pair<double, double> standard_normal_pair(std::uint64_t a, std::uint64_t b);

// Sequential stream for inherently serial consumers (annealing).
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, Domain domain) : seed_(seed), domain_(domain) {}

  std::uint64_t next_u64();
  double next_uniform() { return uniform_open(next_u64()); }
  // Uniform integer in [0, bound), bound >= 1. Unbiased (rejection).
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  Domain domain_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  bool have_second_ = false;
};

}  // namespace lacsum::rng
