#include "lacsum/random.hpp"

#include <cmath>
#include <numbers>

namespace lacsum::rng {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Block philox4x32_10(Block ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::array<std::uint64_t, 2> draw(std::uint64_t seed, Domain domain, std::uint64_t chunk,
                                  std::uint32_t lane) {
  const Block ctr{lane, static_cast<std::uint32_t>(chunk),
                  static_cast<std::uint32_t>(chunk >> 32), static_cast<std::uint32_t>(domain)};
  const Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const Block out = philox4x32_10(ctr, key);
  return {(static_cast<std::uint64_t>(out[0]) << 32) | out[1],
          (static_cast<std::uint64_t>(out[2]) << 32) | out[3]};
}

std::pair<double, double> standard_normal_pair(std::uint64_t a, std::uint64_t b) {
  const double radius = std::sqrt(-2.0 * std::log(uniform_open(a)));
  const double angle = 2.0 * std::numbers::pi * uniform_open(b);
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

std::uint64_t CounterStream::next_u64() {
  if (have_second_) {
    have_second_ = false;
    return buffer_[1];
  }
  buffer_ = draw(seed_, domain_, counter_ >> 32, static_cast<std::uint32_t>(counter_));
  ++counter_;
  have_second_ = true;
  return buffer_[0];
}

std::uint64_t CounterStream::next_below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Largest multiple of bound that fits; reject above it.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % bound;
}

}  // namespace lacsum::rng
