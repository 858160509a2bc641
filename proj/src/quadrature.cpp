#include "lacsum/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "lacsum/errors.hpp"

namespace lacsum {

namespace {

__extension__ using u128 = unsigned __int128;

GaussLegendreRule build_rule() {
  using Gauss = boost::math::quadrature::gauss<double, 8>;
  const auto& x = Gauss::abscissa();
  const auto& w = Gauss::weights();
  GaussLegendreRule rule{};
  // Boost stores the nonnegative half of the symmetric rule.
  for (std::size_t i = 0; i < 4; ++i) {
    rule.nodes[3 - i] = 0.5 * (1.0 - x[i]);
    rule.weights[3 - i] = 0.5 * w[i];
    rule.nodes[4 + i] = 0.5 * (1.0 + x[i]);
    rule.weights[4 + i] = 0.5 * w[i];
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre8() {
  static const GaussLegendreRule rule = build_rule();
  return rule;
}

std::uint64_t panel_count(std::uint64_t k_max, const QuadratureConfig& cfg) {
  if (cfg.points_per_period < 8) throw InvalidInput("points_per_period must be >= 8");
  std::uint64_t panels = 0;
  if (__builtin_mul_overflow(cfg.points_per_period, k_max, &panels) ||
      panels > cfg.max_total_points) {
    throw FrequencyTooLarge("quadrature needs points_per_period * k_max = " +
                            std::to_string(cfg.points_per_period) + " * " + std::to_string(k_max) +
                            " panels, above the budget of " + std::to_string(cfg.max_total_points) +
                            "; use the Monte Carlo method");
  }
  return panels;
}

namespace detail {

std::vector<Phasor> node_rotations(std::span<const std::uint64_t> freqs, std::uint64_t panels) {
  const auto& rule = gauss_legendre8();
  std::vector<Phasor> rot(freqs.size() * 8);
  for (std::size_t j = 0; j < freqs.size(); ++j) {
    const double cycles_per_panel = static_cast<double>(freqs[j]) / static_cast<double>(panels);
    for (std::size_t i = 0; i < 8; ++i) {
      rot[j * 8 + i] = unit_phasor(cycles_per_panel * rule.nodes[i]);
    }
  }
  return rot;
}

Phasor panel_start(std::uint64_t k, std::uint64_t panel, std::uint64_t panels) {
  const auto r = static_cast<std::uint64_t>(static_cast<u128>(k % panels) * panel % panels);
  const double centered = 2 * r >= panels
                              ? -static_cast<double>(panels - r) / static_cast<double>(panels)
                              : static_cast<double>(r) / static_cast<double>(panels);
  return unit_phasor(centered);
}

}  // namespace detail

namespace {

struct PanelModulus {
  std::span<const Phasor> start;
  // k_j / panels: phase advance in cycles per unit of local coordinate.
  std::span<const double> advance;

  double at(double u) const {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < start.size(); ++j) {
      const Phasor r = unit_phasor(advance[j] * u);
      re += start[j].re * r.re - start[j].im * r.im;
      im += start[j].re * r.im + start[j].im * r.re;
    }
    return std::sqrt(re * re + im * im);
  }

  double rule(double a, double b) const {
    const auto& gl = gauss_legendre8();
    double acc = 0.0;
    for (std::size_t i = 0; i < 8; ++i) acc += gl.weights[i] * at(a + (b - a) * gl.nodes[i]);
    return (b - a) * acc;
  }

  // Bisects until the two halves agree with the whole to `tol` per unit
  // length.
  double refine(double a, double b, double whole, double tol, int depth) const {
    const double m = 0.5 * (a + b);
    const double left = rule(a, m);
    const double right = rule(m, b);
    if (depth >= 48 || std::abs(left + right - whole) <= tol * (b - a)) return left + right;
    return refine(a, m, left, tol, depth + 1) + refine(m, b, right, tol, depth + 1);
  }
};

}  // namespace

double integrate_modulus(std::span<const std::uint64_t> freqs, const QuadratureConfig& cfg) {
  const std::uint64_t k_max = *std::max_element(freqs.begin(), freqs.end());
  const std::uint64_t panels = panel_count(k_max, cfg);
  const auto& rule = gauss_legendre8();
  const std::size_t n = freqs.size();
  const std::vector<Phasor> rot = detail::node_rotations(freqs, panels);
  const std::uint64_t chunks = (panels + detail::kPanelsPerChunk - 1) / detail::kPanelsPerChunk;

  // Everything below is in local panel units: u in [0, 1] spans one panel.
  std::vector<double> advance(n);
  double curvature = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    advance[j] = static_cast<double>(freqs[j]) / static_cast<double>(panels);
    curvature += advance[j] * advance[j];
  }
  const double two_pi = 2.0 * std::numbers::pi;
  // Bound on |d^2 S / du^2|.
  curvature *= two_pi * two_pi;
  const double tol = 1e-14 * std::sqrt(static_cast<double>(n));

  auto chunk_fn = [&](std::size_t c) {
    std::vector<Phasor> start(n);
    double acc = 0.0;
    const std::uint64_t begin = c * detail::kPanelsPerChunk;
    const std::uint64_t end = std::min(panels, begin + detail::kPanelsPerChunk);
    for (std::uint64_t p = begin; p < end; ++p) {
      for (std::size_t j = 0; j < n; ++j) start[j] = detail::panel_start(freqs[j], p, panels);
      double coarse = 0.0, min_mod = INFINITY, max_slope = 0.0;
      for (std::size_t i = 0; i < 8; ++i) {
        double re = 0.0, im = 0.0, dre = 0.0, dim = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const Phasor a = start[j];
          const Phasor b = rot[j * 8 + i];
          const double zr = a.re * b.re - a.im * b.im;
          const double zi = a.re * b.im + a.im * b.re;
          re += zr;
          im += zi;
          dre += advance[j] * zr;
          dim += advance[j] * zi;
        }
        const double mod = std::sqrt(re * re + im * im);
        coarse += rule.weights[i] * mod;
        min_mod = std::min(min_mod, mod);
        max_slope = std::max(max_slope, two_pi * std::sqrt(dre * dre + dim * dim));
      }
      // A zero or near-zero of S within about two panel widths makes |S|
      // too sharp for one panel; those panels are bisected adaptively.
      if (min_mod < 2.0 * max_slope + curvature) {
        const PanelModulus pm{start, advance};
        coarse = pm.refine(0.0, 1.0, coarse, tol, 0);
      }
      acc += coarse;
    }
    return acc;
  };
  const double total =
      chunked_reduce<double>(chunks, cfg.workers, chunk_fn, [](double a, double b) { return a + b; });
  return total / static_cast<double>(panels);
}

}  // namespace lacsum
