#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "lacsum/clt.hpp"
#include "lacsum/errors.hpp"
#include "lacsum/exponential_sum.hpp"
#include "lacsum/norms.hpp"

namespace lacsum {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const double kRayleighMean = std::sqrt(kPi) / 2.0;

// log(1 + z) = sum (-1)^{m+1} z^m / m with z = ix; the first two terms cancel
// against x^2/2 + ix, leaving the tail from m = 3.
cd w_series(double x) {
  const cd z(0.0, x);
  cd tail{0.0, 0.0};
  cd power = z * z * z;
  for (int m = 3; m < 3000; ++m) {
    tail -= (m % 2 == 1 ? 1.0 : -1.0) * power / static_cast<double>(m);
    power *= z;
  }
  return tail;
}

TEST(WRemainder, Examples) {
  EXPECT_EQ(w_remainder(0.0), cd(0.0, 0.0));
  const cd w = w_remainder(0.1);
  // Leading terms x^4/4 and x^3/3; the next ones are O(x^5).
  EXPECT_NEAR(w.real(), 2.5e-5, 1e-5);
  EXPECT_NEAR(w.imag(), 3.3333e-4, 1e-5);
  EXPECT_LE(std::abs(w_remainder(0.5)), 0.125);
  EXPECT_THROW(w_remainder(1.0), DomainError);
  EXPECT_THROW(w_remainder(-1.5), DomainError);
  EXPECT_THROW(w_remainder(std::nan("")), DomainError);
}

TEST(WRemainder, MatchesTaylorSeries) {
  for (double x : {-0.7, -0.3, -1e-2, -2e-4, 3e-5, 1e-3, 0.05, 0.25, 0.6, 0.9}) {
    const cd got = w_remainder(x);
    const cd want = w_series(x);
    EXPECT_LE(std::abs(got - want), 1e-15 + 1e-12 * std::abs(want)) << x;
  }
}

TEST(WRemainder, BoundAndReconstruction) {
  std::mt19937_64 gen(301);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 10'000; ++i) {
    const double x = u(gen);
    const cd w = w_remainder(x);
    EXPECT_LE(std::abs(w), std::abs(x * x * x));
    const cd rebuilt = cd(1.0, x) * std::exp(-x * x / 2.0 + w);
    EXPECT_LE(std::abs(rebuilt - std::polar(1.0, x)), 1e-14);
  }
}

TEST(WRemainder, CubicLeadingBehaviour) {
  // w / x^3 = i/3 + x/4 + O(x^2).
  for (double x : {1e-2, -1e-2, 1e-3}) {
    const cd ratio = w_remainder(x) / (x * x * x);
    EXPECT_NEAR(ratio.imag(), 1.0 / 3.0, 2.0 * x * x);
    EXPECT_NEAR(ratio.real(), x / 4.0, 2.0 * x * x);
  }
}

TEST(ProductMoment, Examples) {
  const FrequencySet fs{8, 64};
  const std::vector<int> zero{0, 0}, first{1, 0}, both{1, 1};
  EXPECT_NEAR(std::abs(product_moment(fs, zero, zero, 0.3, 0.7) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(product_moment(fs, first, zero, 1, 1)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(product_moment(fs, both, zero, 1, 1)), 0.0, 1e-13);
  // sin and cos of the same frequency are orthogonal.
  const std::vector<int> on{1};
  EXPECT_NEAR(std::abs(product_moment(FrequencySet{5}, on, on, 1, 1)), 0.0, 1e-13);
  EXPECT_THROW(product_moment(fs, std::vector<int>{1}, zero, 1, 1), InvalidInput);
  EXPECT_THROW(product_moment(fs, std::vector<int>{2, 0}, zero, 1, 1), InvalidInput);
}

TEST(ProductMoment, NonLacunaryResonance) {
  // cos 2pi theta cos 2pi 2 theta cos 2pi 3 theta has mean 1/4.
  const FrequencySet fs{1, 2, 3};
  const std::vector<int> none{0, 0, 0}, all{1, 1, 1};
  const cd m = product_moment(fs, none, all, 1, 1);
  EXPECT_NEAR(m.real(), 0.0, 1e-13);
  EXPECT_NEAR(m.imag(), -0.25, 1e-13);
}

TEST(AlphaMean, Examples) {
  EXPECT_EQ(alpha_mean(lacunary_set(8, 3), 0.0, 0.0), cd(1.0, 0.0));
  EXPECT_LE(std::abs(alpha_mean(lacunary_set(8, 1), 0.5, 0.5) - 1.0), 1e-8);
  EXPECT_LE(std::abs(alpha_mean(lacunary_set(8, 4), 1.0, 1.0) - 1.0), 1e-6);
  EXPECT_LE(std::abs(alpha_mean(lacunary_set(8, 3), -2.0, 0.5) - 1.0), 1e-6);
}

TEST(AlphaMean, ExpansionOverSubsets) {
  // E alpha = sum over (delta, delta_hat) of n^{-(|delta|+|delta_hat|)/2}
  // times the product moment.
  for (const FrequencySet& fs : {FrequencySet{1, 2, 3}, FrequencySet{2, 5, 7}, FrequencySet{3, 4}}) {
    const std::size_t n = fs.size();
    const double s = 1.3, t = -0.8;
    cd expanded{0.0, 0.0};
    for (unsigned mask = 0; mask < (1u << (2 * n)); ++mask) {
      std::vector<int> d(n), dh(n);
      int weight = 0;
      for (std::size_t j = 0; j < n; ++j) {
        d[j] = (mask >> j) & 1u;
        dh[j] = (mask >> (n + j)) & 1u;
        weight += d[j] + dh[j];
      }
      expanded += std::pow(static_cast<double>(n), -weight / 2.0) * product_moment(fs, d, dh, s, t);
    }
    EXPECT_LE(std::abs(alpha_mean(fs, s, t) - expanded), 1e-12);
  }
}

TEST(AlphaMean, NonLacunaryControlDeviates) {
  const cd m = alpha_mean(FrequencySet{1, 2, 3}, 2.0, 2.0);
  EXPECT_GT(std::abs(m - 1.0), 1e-3);
}

TEST(Alpha, PointwiseIdentityAndBound) {
  std::mt19937_64 gen(307);
  std::uniform_real_distribution<double> u01(0.0, 1.0), ust(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::uint64_t> v;
    const std::size_t n = 1 + gen() % 8;
    while (v.size() < n) {
      const std::uint64_t k = 1 + gen() % 500;
      if (std::find(v.begin(), v.end(), k) == v.end()) v.push_back(k);
    }
    const FrequencySet fs(v);
    const double theta = u01(gen);
    // Keep |s sin / sqrt n| < 1 so w stays in its domain.
    const double s = ust(gen) * 0.49 * std::sqrt(double(n));
    const double t = ust(gen) * 0.49 * std::sqrt(double(n));
    const cd a = alpha_at(fs, s, t, theta);
    const MuNu x = evaluate_mu_nu(fs, theta);
    const cd lhs = a * std::exp(-(s * s + t * t) / 4.0 + beta_at(fs, s, t, theta));
    const cd rhs = std::polar(1.0, s * x.mu + t * x.nu);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10);
    EXPECT_LE(std::abs(a), alpha_modulus_bound(fs, s, t, theta) * (1.0 + 1e-12));
  }
}

TEST(CharFn, OriginIsExactlyOne) {
  const std::vector<GridPoint> grid{{0.0, 0.0}};
  McConfig mc;
  mc.samples = 1000;
  mc.seed = 3;
  const auto pts = empirical_char_fn(lacunary_set(8, 5), grid, mc);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].phi, cd(1.0, 0.0));
  EXPECT_EQ(pts[0].gaussian, 1.0);
}

TEST(CharFn, SingletonMatchesBessel) {
  const std::vector<GridPoint> grid{{1.0, 0.0}, {0.0, 2.0}, {1.5, -1.0}};
  McConfig mc;
  mc.samples = 1'000'000;
  mc.seed = 11;
  for (const CharFnPoint& p : empirical_char_fn(FrequencySet{1}, grid, mc)) {
    const double want = std::cyl_bessel_j(0.0, std::hypot(p.s, p.t));
    EXPECT_LE(std::abs(p.phi - want), 4.0 * p.std_error + 1e-12) << p.s << "," << p.t;
    EXPECT_LE(std::abs(p.phi), 1.0 + 3.0 * p.std_error);
  }
}

TEST(CharFn, LacunaryNearGaussian) {
  const std::vector<GridPoint> grid{{1.0, 1.0}};
  McConfig mc;
  mc.samples = 1'000'000;
  mc.seed = 5;
  const CharFnPoint p = empirical_char_fn(lacunary_set(8, 16), grid, mc).at(0);
  EXPECT_DOUBLE_EQ(p.gaussian, std::exp(-0.5));
  EXPECT_LE(std::abs(p.phi - p.gaussian), 0.01 + 3.0 * p.std_error);
}

TEST(DeviationBound, Examples) {
  EXPECT_DOUBLE_EQ(deviation_bound(0, 0, 7), 1.0 / 7.0);
  const double e = std::numbers::e;
  EXPECT_NEAR(deviation_bound(1, 1, 16), std::sqrt(e) - 1 + e - 1 + e * e / 16, 1e-14);
  EXPECT_NEAR(deviation_bound(1, 1, 16), 2.8288, 1e-4);
  EXPECT_NEAR(deviation_bound(1, 1, 100'000'000), 0.0204014, 1e-6);
}

TEST(Gaussian, AbsMeanExamples) {
  EXPECT_NEAR(gaussian_abs_mean({0.5}), 0.886227, 1e-6);
  EXPECT_NEAR(gaussian_abs_mean({0.5}), kRayleighMean, 1e-15);
  EXPECT_EQ(gaussian_abs_mean({0.0}), 0.0);
  EXPECT_NEAR(gaussian_abs_mean({2.0}), 1.772454, 1e-6);
}

TEST(Gaussian, TruncatedMeanMatchesSimpson) {
  for (double v : {0.5, 0.9, 2.0})
    for (double r : {0.3, 1.0, 2.0, 5.0}) {
      // integral of r^2/v exp(-r^2 / 2v) dr over [0, R].
      const int m = 20'000;
      const double h = r / m;
      double acc = 0.0;
      for (int i = 0; i <= m; ++i) {
        const double x = i * h;
        const double f = x * x / v * std::exp(-x * x / (2 * v));
        acc += f * (i == 0 || i == m ? 1 : (i % 2 ? 4 : 2));
      }
      EXPECT_NEAR(gaussian_truncated_abs_mean({v}, r), acc * h / 3, 1e-12);
    }
  EXPECT_NEAR(gaussian_truncated_abs_mean({0.5}, 60.0), kRayleighMean, 1e-15);
}

TEST(Gaussian, SimulationAgreesWithFormula) {
  for (double v : {0.5, 0.2, 3.0}) {
    const MeanWithError m = simulate_gaussian_abs_mean({v}, 1'000'000, 17);
    EXPECT_LE(std::abs(m.value - gaussian_abs_mean({v})), 4.0 * m.std_error);
  }
}

TEST(Smoothing, WorkedExamples) {
  EXPECT_NEAR(smoothing_bound({2, 2, 1, 1, 1, 1, 0}), 2 * std::exp(-2.0), 1e-12);
  EXPECT_NEAR(smoothing_bound({1, 2, 2, 1, 1, 3, 0.1}), 0.3 + 7.5 * std::exp(-2.0), 1e-12);
  EXPECT_NEAR(smoothing_bound({1, 2, 2, 1, 1, 3, 0.1}), 1.3150, 1e-4);
}

TEST(CltReport, LacunaryDeskScale) {
  McConfig mc;
  mc.samples = 1'000'000;
  mc.seed = 7;
  const auto grid = default_phi_grid();
  EXPECT_EQ(grid.size(), 49u);
  const FrequencySet fs = lacunary_set(8, 16);
  const CltReport r = clt_report(fs, mc, grid, false);
  EXPECT_EQ(r.n, 16u);
  EXPECT_NEAR(r.radial_mean, kRayleighMean, 0.05);
  EXPECT_LE(r.ks_mu, 0.02);
  EXPECT_LE(r.ks_nu, 0.02);
  EXPECT_NEAR(r.cov_hat[0][0], 0.5, 0.01);
  EXPECT_NEAR(r.cov_hat[1][1], 0.5, 0.01);
  EXPECT_NEAR(r.cov_hat[0][1], 0.0, 0.01);
  EXPECT_EQ(r.cov_hat[0][1], r.cov_hat[1][0]);
  EXPECT_FALSE(r.chain_audit.has_value());
  EXPECT_EQ(r.sorted_mu.size(), mc.samples);
  EXPECT_TRUE(std::is_sorted(r.sorted_mu.begin(), r.sorted_mu.end()));

  // Same stream as the L1 estimator.
  const NormEstimate l1 = l1_monte_carlo(fs, mc);
  EXPECT_EQ(std::memcmp(&r.radial_mean, &l1.normalized, sizeof(double)), 0);

  for (const CharFnPoint& p : r.phi_grid) {
    EXPECT_LE(std::abs(p.phi), 1.0 + 3.0 * p.std_error);
    const double bound = deviation_bound(p.s, p.t, 16);
    if (bound < 1.0) EXPECT_LE(std::abs(p.phi - p.gaussian), bound + 4.0 * p.std_error);
  }
}

TEST(CltReport, SingletonIsDegenerate) {
  McConfig mc;
  mc.samples = 20'000;
  mc.seed = 1;
  const CltReport r = clt_report(FrequencySet{3}, mc, default_phi_grid(), false);
  EXPECT_EQ(r.radial_mean, 1.0);
  EXPECT_GT(r.ks_mu, 0.05);
  EXPECT_GT(r.ks_nu, 0.05);
  EXPECT_THROW(clt_report(FrequencySet{3}, mc, default_phi_grid(), true), DomainError);
}

TEST(CltReport, ChainAuditSmallLacunary) {
  McConfig mc;
  mc.samples = 100'000;
  mc.seed = 13;
  const CltReport r = clt_report(lacunary_set(8, 4), mc, default_phi_grid(), true);
  ASSERT_TRUE(r.chain_audit.has_value());
  const FinalChainAudit& a = *r.chain_audit;
  EXPECT_NEAR(a.truncation_radius, std::pow(std::log(4.0), 0.25), 1e-15);
  EXPECT_NEAR(a.smoothing_variance, std::pow(std::log(4.0), -0.125), 1e-15);
  EXPECT_EQ(a.e_abs_x.value, r.radial_mean);
  EXPECT_FALSE(a.checks.empty());
  for (const ChainCheck& c : a.checks) EXPECT_TRUE(c.holds) << c.name;
  EXPECT_TRUE(a.all_hold());
}

}  // namespace
}  // namespace lacsum
