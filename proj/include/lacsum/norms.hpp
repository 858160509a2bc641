#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "lacsum/frequency_set.hpp"
#include "lacsum/monte_carlo.hpp"
#include "lacsum/quadrature.hpp"

namespace lacsum {

enum class Method { quadrature, monte_carlo };

std::string_view to_string(Method m);

// An L^p norm of S over [0,1] (the norm itself, not its p-th power).
struct NormEstimate {
  int p = 1;
  double value = 0.0;
  // value / sqrt(n). For p = 1 this is the quantity bounded by 1.
  double normalized = 0.0;
  // Absent for quadrature.
  std::optional<double> std_error;
  Method method = Method::quadrature;
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
};

// Mean of a scalar functional of theta with its standard error (0 for
// quadrature).
struct MomentEstimate {
  double value = 0.0;
  double std_error = 0.0;
  Method method = Method::quadrature;
};

// p in {1, 2, 4}. For p in {2, 4} the integrand is a trigonometric polynomial
// and the rule is exact up to rounding; for p = 1 accuracy is empirical.
NormEstimate lp_norm_quadrature(const FrequencySet& fs, int p, const QuadratureConfig& cfg = {});

// Monte Carlo estimate of the L^p norm, p in {1, 2, 4}. The standard error
// of value is propagated from that of the mean of |S|^p.
NormEstimate lp_monte_carlo(const FrequencySet& fs, int p, const McConfig& mc);

inline NormEstimate l1_monte_carlo(const FrequencySet& fs, const McConfig& mc) {
  return lp_monte_carlo(fs, 1, mc);
}

// Quadrature when the panel budget allows, else Monte Carlo sized so that
// std_error <= tol / 3. Throws BudgetExceeded past 1e10 samples.
NormEstimate l1_auto(const FrequencySet& fs, double tol, std::uint64_t seed = 0,
                     const QuadratureConfig& quad = {}, unsigned workers = 0);

inline constexpr std::uint64_t kMaxAutoSamples = 10'000'000'000ULL;

// Integral of (sum_j cos 4 pi k_j theta)^4 over [0,1].
MomentEstimate fourth_moment_cos(const FrequencySet& fs, Method method,
                                 const QuadratureConfig& quad = {}, const McConfig& mc = {});

// Measure of {theta : |sum_j cos 4 pi k_j theta| >= n^{3/4}}. Ties count as
// exceeding.
MomentEstimate markov_tail_fraction(const FrequencySet& fs, const McConfig& mc);

}  // namespace lacsum
