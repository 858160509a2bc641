#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lacsum/frequency_set.hpp"
#include "lacsum/monte_carlo.hpp"
#include "lacsum/quadrature.hpp"

namespace lacsum {

// Estimate of phi(s,t) = E exp(i s mu + i t nu) with the Gaussian target
// exp(-(s^2 + t^2) / 4).
struct CharFnPoint {
  double s = 0.0;
  double t = 0.0;
  std::complex<double> phi;
  double std_error = 0.0;
  double gaussian = 0.0;
};

// Centered 2-D normal with covariance diag(sigma2, sigma2).
struct GaussianSpec {
  double sigma2 = 0.5;
};

struct SmoothingInputs {
  double t1 = 1.0;
  double t2 = 1.0;
  double delta1 = 1.0;
  double delta2 = 1.0;
  double x = 1.0;
  double y = 1.0;
  // Integral of |p1 - p2| over [-t1, t1] x [-t2, t2].
  double integral_term = 0.0;
};

struct MeanWithError {
  double value = 0.0;
  double std_error = 0.0;
};

// One inequality lhs >= rhs (or equality when two_sided) checked within four
// standard errors of the per-sample difference.
struct ChainCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double std_error = 0.0;
  bool two_sided = false;
  bool holds = false;
};

// Every expectation in the lower-bound chain E|X| >= ... >= E|Y+Z| - ...,
// with X = (mu, nu), Y ~ N(0, I/2), Z ~ N(0, sigma^2 I) independent, and
// sigma^2 = (log n)^{-1/8}.
struct FinalChainAudit {
  MeanWithError e_abs_x;
  MeanWithError e_abs_xz;
  MeanWithError e_abs_xz_trunc;
  MeanWithError e_abs_yz;
  MeanWithError e_abs_yz_trunc;
  MeanWithError e_abs_z;
  double truncation_radius = 0.0;
  double smoothing_variance = 0.0;
  std::vector<ChainCheck> checks;

  bool all_hold() const;
};

struct CltReport {
  std::size_t n = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  // Estimate of E|X|, the normalized L1 norm.
  double radial_mean = 0.0;
  double radial_std_error = 0.0;
  double ks_mu = 0.0;
  double ks_nu = 0.0;
  std::array<std::array<double, 2>, 2> cov_hat{};
  std::vector<CharFnPoint> phi_grid;
  std::optional<FinalChainAudit> chain_audit;
  // Sorted marginal samples, kept for ECDF export.
  std::vector<double> sorted_mu;
  std::vector<double> sorted_nu;
};

// w(x) = x^2/2 + i x - Log(1 + i x), so exp(ix) = (1 + ix) exp(-x^2/2 + w(x)).
// Throws DomainError unless |x| < 1.
std::complex<double> w_remainder(double x);

// alpha(s,t)(theta) = prod_j (1 + i s sin_j / sqrt n) (1 + i t cos_j / sqrt n).
std::complex<double> alpha_at(const FrequencySet& fs, double s, double t, double theta);
// beta(s,t)(theta) = sum_j [(s^2 - t^2) cos(4 pi k_j theta) / (4n)
//                           + w(s sin_j / sqrt n) + w(t cos_j / sqrt n)].
std::complex<double> beta_at(const FrequencySet& fs, double s, double t, double theta);
// exp((s^2 + t^2)/4 + sum_j (t^2 - s^2) cos(4 pi k_j theta) / (4n)), which
// dominates |alpha|.
double alpha_modulus_bound(const FrequencySet& fs, double s, double t, double theta);

// E prod_j (i s sin 2 pi k_j theta)^{delta_j} (i t cos 2 pi k_j theta)^{hat_j}
// by quadrature. delta and delta_hat have one 0/1 entry per frequency.
std::complex<double> product_moment(const FrequencySet& fs, std::span<const int> delta,
                                    std::span<const int> delta_hat, double s, double t,
                                    const QuadratureConfig& cfg = {});

// E alpha(s,t) by quadrature; exactly 1 at s = t = 0.
std::complex<double> alpha_mean(const FrequencySet& fs, double s, double t,
                                const QuadratureConfig& cfg = {});

using GridPoint = std::pair<double, double>;

// {-2, -1, -0.5, 0, 0.5, 1, 2}^2.
std::vector<GridPoint> default_phi_grid();

std::vector<CharFnPoint> empirical_char_fn(const FrequencySet& fs, std::span<const GridPoint> grid,
                                           const McConfig& mc);

// [exp((|s|^3 + |t|^3)/sqrt n) - 1] + [exp(n^{-1/4}(s^2 + t^2)) - 1]
//   + exp(s^2 + t^2)/n, a majorant of |phi(s,t) - exp(-(s^2+t^2)/4)|.
double deviation_bound(double s, double t, std::uint64_t n);

// E|G| = sqrt(pi sigma^2 / 2).
double gaussian_abs_mean(GaussianSpec g);
// E|G| 1{|G| <= radius}.
double gaussian_truncated_abs_mean(GaussianSpec g, double radius);
// Sample mean of |G| over `samples` draws.
MeanWithError simulate_gaussian_abs_mean(GaussianSpec g, std::uint64_t samples, std::uint64_t seed,
                                         unsigned workers = 0);

// x y I + x y (delta2/delta1 exp(-T1^2 delta1^2/2) + delta1/delta2 exp(-T2^2 delta2^2/2)).
double smoothing_bound(const SmoothingInputs& in);

// The chain audit requires n >= 2 (log n > 0). Antithetic sampling is not
// used here.
CltReport clt_report(const FrequencySet& fs, const McConfig& mc, std::span<const GridPoint> grid,
                     bool with_chain_audit);

}  // namespace lacsum
