#pragma once

#include <cstdint>

#include "lacsum/exponential_sum.hpp"
#include "lacsum/parallel.hpp"
#include "lacsum/random.hpp"

namespace lacsum {

struct McConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  // Fixed partition of the sample stream; never derived from worker count.
  std::uint64_t chunk_size = std::uint64_t{1} << 16;
  // Average f(theta) and f(1 - theta) into one observation.
  bool antithetic = false;
  unsigned workers = 0;
};

// Throws InvalidInput for samples == 0 or chunk_size outside [1, 2^32].
void validate(const McConfig& mc);

// Sample `index` of the theta stream for `seed`.
inline DyadicTheta sample_theta(std::uint64_t seed, std::uint64_t chunk, std::uint32_t lane) {
  return DyadicTheta::from_random(rng::draw(seed, rng::Domain::theta, chunk, lane)[0]);
}

// Runs visit(acc, chunk, lane) over `observations` indices partitioned into
// chunks of mc.chunk_size, one accumulator per chunk, merged in fixed order.
template <class Acc, class Visit, class Merge>
Acc sample_reduce(std::uint64_t observations, const McConfig& mc, Visit visit, Merge merge) {
  validate(mc);
  const std::uint64_t chunks = (observations + mc.chunk_size - 1) / mc.chunk_size;
  auto chunk_fn = [&](std::size_t c) {
    Acc acc{};
    const std::uint64_t begin = c * mc.chunk_size;
    const std::uint64_t len = std::min(mc.chunk_size, observations - begin);
    for (std::uint64_t lane = 0; lane < len; ++lane) {
      visit(acc, static_cast<std::uint64_t>(c), static_cast<std::uint32_t>(lane));
    }
    return acc;
  };
  return chunked_reduce<Acc>(chunks, mc.workers, chunk_fn, merge);
}

}  // namespace lacsum
