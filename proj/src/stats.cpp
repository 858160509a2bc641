#include "lacsum/stats.hpp"

#include <algorithm>

namespace lacsum {

RunningStats RunningStats::merge(const RunningStats& a, const RunningStats& b) {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  RunningStats out;
  out.count = a.count + b.count;
  const double na = static_cast<double>(a.count);
  const double nb = static_cast<double>(b.count);
  const double n = static_cast<double>(out.count);
  const double d = b.mean - a.mean;
  out.mean = a.mean + d * (nb / n);
  out.m2 = a.m2 + b.m2 + d * d * (na * nb / n);
  return out;
}

RunningCovariance RunningCovariance::merge(const RunningCovariance& a,
                                           const RunningCovariance& b) {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  RunningCovariance out;
  out.count = a.count + b.count;
  const double na = static_cast<double>(a.count);
  const double nb = static_cast<double>(b.count);
  const double n = static_cast<double>(out.count);
  const double dx = b.mean_x - a.mean_x;
  const double dy = b.mean_y - a.mean_y;
  out.mean_x = a.mean_x + dx * (nb / n);
  out.mean_y = a.mean_y + dy * (nb / n);
  const double w = na * nb / n;
  out.cxx = a.cxx + b.cxx + dx * dx * w;
  out.cyy = a.cyy + b.cyy + dy * dy * w;
  out.cxy = a.cxy + b.cxy + dx * dy * w;
  return out;
}

double normal_cdf(double x, double variance) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance));
}

double ks_statistic_normal(std::span<const double> sorted, double variance) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = normal_cdf(sorted[i], variance);
    const double i_d = static_cast<double>(i);
    d = std::max({d, (i_d + 1.0) / n - f, f - i_d / n});
  }
  return d;
}

}  // namespace lacsum
