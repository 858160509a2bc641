#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lacsum/exponential_sum.hpp"
#include "lacsum/parallel.hpp"

namespace lacsum {

// Composite 8-point Gauss-Legendre over [0,1] with panel width
// 1 / (points_per_period * k_max).
struct QuadratureConfig {
  std::uint64_t points_per_period = 32;
  // Upper bound on points_per_period * k_max.
  std::uint64_t max_total_points = std::uint64_t{1} << 26;
  unsigned workers = 0;
};

// Nodes and weights on [0,1]; weights sum to 1.
struct GaussLegendreRule {
  std::array<double, 8> nodes;
  std::array<double, 8> weights;
};
const GaussLegendreRule& gauss_legendre8();

// Panel count for the given top frequency. Throws InvalidInput if
// points_per_period < 8 and FrequencyTooLarge past max_total_points.
std::uint64_t panel_count(std::uint64_t k_max, const QuadratureConfig& cfg);

namespace detail {

inline constexpr std::uint64_t kPanelsPerChunk = 2048;

// rotations[j * 8 + i] = exp(2 pi i k_j u_i / panels).
std::vector<Phasor> node_rotations(std::span<const std::uint64_t> freqs, std::uint64_t panels);

// exp(2 pi i k p / panels), with k p mod panels formed exactly.
Phasor panel_start(std::uint64_t k, std::uint64_t panel, std::uint64_t panels);

}  // namespace detail

// Integrates f(theta) over [0,1], where the integrand sees only the phasors
// z_j = exp(2 pi i k_j theta). Panel start phases are reduced exactly and
// rotated to the nodes, so each node costs one complex multiply per term.
// Result is double or std::complex<double>; deterministic for any worker
// count.
template <class Result, class Integrand>
Result integrate_periodic(std::span<const std::uint64_t> freqs, std::uint64_t k_ref,
                          const QuadratureConfig& cfg, Integrand&& f) {
  const std::uint64_t panels = panel_count(k_ref, cfg);
  const auto& rule = gauss_legendre8();
  const std::size_t n = freqs.size();
  const std::vector<Phasor> rot = detail::node_rotations(freqs, panels);
  const std::uint64_t chunks = (panels + detail::kPanelsPerChunk - 1) / detail::kPanelsPerChunk;

  auto chunk_fn = [&](std::size_t c) {
    std::vector<Phasor> start(n);
    std::vector<Phasor> z(n);
    Result acc{};
    const std::uint64_t begin = c * detail::kPanelsPerChunk;
    const std::uint64_t end = std::min(panels, begin + detail::kPanelsPerChunk);
    for (std::uint64_t p = begin; p < end; ++p) {
      for (std::size_t j = 0; j < n; ++j) start[j] = detail::panel_start(freqs[j], p, panels);
      for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const Phasor a = start[j];
          const Phasor b = rot[j * 8 + i];
          z[j] = {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
        }
        acc += rule.weights[i] * f(std::span<const Phasor>(z));
      }
    }
    return acc;
  };
  Result total = chunked_reduce<Result>(chunks, cfg.workers, chunk_fn,
                                        [](Result a, Result b) { return a + b; });
  return total / static_cast<double>(panels);
}

// Integral of |sum_j z_j| over [0,1]. |S| has a kink at every zero of S, so
// panels that may hold a zero or near-zero are bisected adaptively; the
// rest use the plain composite rule.
double integrate_modulus(std::span<const std::uint64_t> freqs, const QuadratureConfig& cfg);

}  // namespace lacsum
