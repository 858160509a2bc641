#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "lacsum/frequency_set.hpp"

namespace lacsum {

// S(theta) = sum_j exp(2 pi i k_j theta).
struct SumValue {
  double re = 0.0;
  double im = 0.0;

  double norm_sq() const { return re * re + im * im; }
  double modulus() const { return std::sqrt(norm_sq()); }
};

// Normalized sine and cosine sums: mu = Im S / sqrt(n), nu = Re S / sqrt(n).
struct MuNu {
  double mu = 0.0;
  double nu = 0.0;
};

// theta = bits * 2^-63 with bits < 2^63. Monte Carlo paths sample these so
// that k * theta mod 1 is exact integer arithmetic.
struct DyadicTheta {
  static constexpr std::uint64_t kMask = (std::uint64_t{1} << 63) - 1;

  std::uint64_t bits = 0;

  static DyadicTheta from_random(std::uint64_t word) { return {word >> 1}; }
  double value() const { return std::ldexp(static_cast<double>(bits), -63); }
  // 1 - theta, reduced mod 1.
  DyadicTheta reflected() const { return {(kMask + 1 - bits) & kMask}; }
};

// Representative of k * theta mod 1 in [-1/2, 1/2). The product is formed
// exactly from the binary expansion of theta (128-bit integer arithmetic), so
// the only error is the final rounding to double. Any finite theta accepted.
double centered_phase(std::uint64_t k, double theta);

// Same for a dyadic theta; `harmonic` multiplies the frequency (wrapping
// arithmetic keeps 2 * k * theta exact even when 2k overflows 64 bits).
inline double centered_phase(std::uint64_t k, DyadicTheta theta, std::uint64_t harmonic = 1) {
  const std::uint64_t r = (k * theta.bits * harmonic) & DyadicTheta::kMask;
  // Upper half of [0, 2^63) wraps to negative.
  const auto c = static_cast<std::int64_t>(r >= (std::uint64_t{1} << 62) ? r - (std::uint64_t{1} << 63) : r);
  return std::ldexp(static_cast<double>(c), -63);
}

// (cos 2 pi f, sin 2 pi f).
struct Phasor {
  double re;
  double im;
};
inline Phasor unit_phasor(double centered) {
  const double angle = 2.0 * std::numbers::pi * centered;
  return {std::cos(angle), std::sin(angle)};
}

// Throws DomainError for non-finite theta.
SumValue evaluate_sum(const FrequencySet& fs, double theta);
SumValue evaluate_sum(const FrequencySet& fs, DyadicTheta theta);

MuNu evaluate_mu_nu(const FrequencySet& fs, double theta);
MuNu evaluate_mu_nu(const FrequencySet& fs, DyadicTheta theta);

// Elementwise identical to evaluate_sum.
std::vector<SumValue> evaluate_batch(const FrequencySet& fs, std::span<const double> thetas);

// |S|, exactly 1 for a singleton (where |S| is identically 1).
inline double sum_modulus(const FrequencySet& fs, const SumValue& s) {
  return fs.size() == 1 ? 1.0 : s.modulus();
}

// Per-term sin(2 pi k_j theta) and cos(2 pi k_j theta).
struct TrigTerms {
  std::vector<double> sin;
  std::vector<double> cos;
};
TrigTerms trig_terms(const FrequencySet& fs, double theta);

}  // namespace lacsum
