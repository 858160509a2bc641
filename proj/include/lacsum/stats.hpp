#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace lacsum {

// Streaming mean/variance (Welford), mergeable (Chan et al.).
struct RunningStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }

  // Unbiased sample variance; 0 for fewer than two observations.
  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double std_error() const {
    return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }

  static RunningStats merge(const RunningStats& a, const RunningStats& b);
};

// Streaming 2x2 covariance of (x, y).
struct RunningCovariance {
  std::uint64_t count = 0;
  double mean_x = 0.0, mean_y = 0.0;
  double cxx = 0.0, cxy = 0.0, cyy = 0.0;

  void add(double x, double y) {
    ++count;
    const double n = static_cast<double>(count);
    const double dx = x - mean_x;
    const double dy = y - mean_y;
    mean_x += dx / n;
    mean_y += dy / n;
    cxx += dx * (x - mean_x);
    cyy += dy * (y - mean_y);
    cxy += dx * (y - mean_y);
  }

  static RunningCovariance merge(const RunningCovariance& a, const RunningCovariance& b);
};

// Standard normal CDF at x / sqrt(variance).
double normal_cdf(double x, double variance);

// Exact one-sample Kolmogorov-Smirnov statistic of sorted samples against
// the centered normal with the given variance.
double ks_statistic_normal(std::span<const double> sorted, double variance);

}  // namespace lacsum
