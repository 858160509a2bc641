#include "lacsum/exponential_sum.hpp"

#include <string>

#include "lacsum/errors.hpp"

namespace lacsum {

namespace {

__extension__ using u128 = unsigned __int128;

void require_finite(double theta) {
  if (!std::isfinite(theta)) throw DomainError("theta must be finite");
}

}  // namespace

double centered_phase(std::uint64_t k, double theta) {
  if (theta == 0.0 || k == 0) return 0.0;
  const bool negative = theta < 0.0;
  int exponent = 0;
  const double mantissa = std::frexp(std::fabs(theta), &exponent);
  // |theta| = m * 2^e with m a 53-bit integer.
  const auto m = static_cast<std::uint64_t>(std::ldexp(mantissa, 53));
  const int e = exponent - 53;
  if (e >= 0) return 0.0;  // k * theta is an integer
  const int shift = -e;
  u128 r = static_cast<u128>(k) * m;
  if (shift < 128) r &= (u128{1} << shift) - 1;
  double f = std::ldexp(static_cast<double>(r), -shift);
  if (f >= 0.5) f -= 1.0;
  if (negative) f = -f;
  if (f >= 0.5) f -= 1.0;
  return f;
}

SumValue evaluate_sum(const FrequencySet& fs, double theta) {
  require_finite(theta);
  SumValue s;
  for (auto k : fs.freqs()) {
    const Phasor z = unit_phasor(centered_phase(k, theta));
    s.re += z.re;
    s.im += z.im;
  }
  return s;
}

SumValue evaluate_sum(const FrequencySet& fs, DyadicTheta theta) {
  SumValue s;
  for (auto k : fs.freqs()) {
    const Phasor z = unit_phasor(centered_phase(k, theta));
    s.re += z.re;
    s.im += z.im;
  }
  return s;
}

MuNu evaluate_mu_nu(const FrequencySet& fs, double theta) {
  const SumValue s = evaluate_sum(fs, theta);
  const double root_n = std::sqrt(static_cast<double>(fs.size()));
  return {s.im / root_n, s.re / root_n};
}

MuNu evaluate_mu_nu(const FrequencySet& fs, DyadicTheta theta) {
  const SumValue s = evaluate_sum(fs, theta);
  const double root_n = std::sqrt(static_cast<double>(fs.size()));
  return {s.im / root_n, s.re / root_n};
}

std::vector<SumValue> evaluate_batch(const FrequencySet& fs, std::span<const double> thetas) {
  std::vector<SumValue> out;
  out.reserve(thetas.size());
  for (double theta : thetas) out.push_back(evaluate_sum(fs, theta));
  return out;
}

TrigTerms trig_terms(const FrequencySet& fs, double theta) {
  require_finite(theta);
  TrigTerms t;
  t.sin.reserve(fs.size());
  t.cos.reserve(fs.size());
  for (auto k : fs.freqs()) {
    const Phasor z = unit_phasor(centered_phase(k, theta));
    t.sin.push_back(z.im);
    t.cos.push_back(z.re);
  }
  return t;
}

}  // namespace lacsum
