#include "lacsum/norms.hpp"

#include <cmath>
#include <string>

#include "lacsum/errors.hpp"
#include "lacsum/stats.hpp"

namespace lacsum {

std::string_view to_string(Method m) {
  return m == Method::quadrature ? "quad" : "mc";
}

void validate(const McConfig& mc) {
  if (mc.samples == 0) throw InvalidInput("Monte Carlo needs at least one sample");
  if (mc.chunk_size == 0 || mc.chunk_size > (std::uint64_t{1} << 32)) {
    throw InvalidInput("chunk_size must be in [1, 2^32]");
  }
}

namespace {

void require_supported_p(int p) {
  if (p != 1 && p != 2 && p != 4) {
    throw InvalidInput("p must be 1, 2 or 4, got " + std::to_string(p));
  }
}

double power_of_modulus(double norm_sq, int p) {
  switch (p) {
    case 1:
      return std::sqrt(norm_sq);
    case 2:
      return norm_sq;
    default:
      return norm_sq * norm_sq;
  }
}

double root_n(const FrequencySet& fs) { return std::sqrt(static_cast<double>(fs.size())); }

}  // namespace

NormEstimate lp_norm_quadrature(const FrequencySet& fs, int p, const QuadratureConfig& cfg) {
  require_supported_p(p);
  const double integral =
      p == 1 ? integrate_modulus(fs.freqs(), cfg)
             : integrate_periodic<double>(fs.freqs(), fs.max(), cfg, [p](std::span<const Phasor> z) {
        double re = 0.0, im = 0.0;
        for (const auto& w : z) {
          re += w.re;
          im += w.im;
        }
        return power_of_modulus(re * re + im * im, p);
      });
  NormEstimate est;
  est.p = p;
  est.value = std::pow(integral, 1.0 / p);
  est.normalized = est.value / root_n(fs);
  est.method = Method::quadrature;
  est.n = fs.size();
  return est;
}

NormEstimate lp_monte_carlo(const FrequencySet& fs, int p, const McConfig& mc) {
  require_supported_p(p);
  validate(mc);
  auto integrand = [&](DyadicTheta theta) {
    if (fs.size() == 1) return 1.0;
    return power_of_modulus(evaluate_sum(fs, theta).norm_sq(), p);
  };
  const std::uint64_t observations = mc.antithetic ? (mc.samples + 1) / 2 : mc.samples;
  const RunningStats stats = sample_reduce<RunningStats>(
      observations, mc,
      [&](RunningStats& acc, std::uint64_t chunk, std::uint32_t lane) {
        const DyadicTheta theta = sample_theta(mc.seed, chunk, lane);
        double y = integrand(theta);
        if (mc.antithetic) y = 0.5 * (y + integrand(theta.reflected()));
        acc.add(y);
      },
      RunningStats::merge);

  NormEstimate est;
  est.p = p;
  est.value = p == 1 ? stats.mean : std::pow(stats.mean, 1.0 / p);
  est.normalized = est.value / root_n(fs);
  // d(m^{1/p})/dm = m^{1/p - 1} / p.
  const double slope = p == 1 ? 1.0 : std::pow(stats.mean, 1.0 / p - 1.0) / p;
  est.std_error = stats.std_error() * slope;
  est.method = Method::monte_carlo;
  est.n = fs.size();
  est.seed = mc.seed;
  est.samples = mc.samples;
  return est;
}

NormEstimate l1_auto(const FrequencySet& fs, double tol, std::uint64_t seed,
                     const QuadratureConfig& quad, unsigned workers) {
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  try {
    (void)panel_count(fs.max(), quad);
    return lp_norm_quadrature(fs, 1, quad);
  } catch (const FrequencyTooLarge&) {
    // dispatch to Monte Carlo below
  }

  McConfig mc;
  mc.seed = seed;
  mc.workers = workers;
  // Pilot run on a derived seed to size the main run.
  McConfig pilot = mc;
  pilot.samples = std::uint64_t{1} << 16;
  pilot.seed = seed ^ 0x5DEECE66DULL;
  const NormEstimate pilot_est = lp_monte_carlo(fs, 1, pilot);
  const double sigma = *pilot_est.std_error * std::sqrt(static_cast<double>(pilot.samples));
  const double target = tol / 3.0;

  double wanted = std::ceil(std::pow(1.1 * sigma / target, 2.0));
  for (int attempt = 0; attempt < 4; ++attempt) {
    if (wanted > static_cast<double>(kMaxAutoSamples)) {
      throw BudgetExceeded("tolerance " + std::to_string(tol) + " needs about " +
                           std::to_string(wanted) + " samples, above the 1e10 budget");
    }
    mc.samples = std::max<std::uint64_t>(static_cast<std::uint64_t>(wanted), pilot.samples);
    NormEstimate est = lp_monte_carlo(fs, 1, mc);
    if (*est.std_error <= target) return est;
    const double ratio = *est.std_error / target;
    wanted = std::ceil(static_cast<double>(mc.samples) * ratio * ratio * 1.05);
  }
  throw BudgetExceeded("Monte Carlo did not reach the requested tolerance");
}

MomentEstimate fourth_moment_cos(const FrequencySet& fs, Method method, const QuadratureConfig& quad,
                                 const McConfig& mc) {
  MomentEstimate out;
  out.method = method;
  if (method == Method::quadrature) {
    out.value =
        integrate_periodic<double>(fs.freqs(), fs.max(), quad, [](std::span<const Phasor> z) {
          double c = 0.0;
          // cos 4 pi k theta = Re z^2
          for (const auto& w : z) c += w.re * w.re - w.im * w.im;
          const double c2 = c * c;
          return c2 * c2;
        });
    return out;
  }
  const RunningStats stats = sample_reduce<RunningStats>(
      mc.samples, mc,
      [&](RunningStats& acc, std::uint64_t chunk, std::uint32_t lane) {
        const DyadicTheta theta = sample_theta(mc.seed, chunk, lane);
        double c = 0.0;
        for (auto k : fs.freqs()) c += unit_phasor(centered_phase(k, theta, 2)).re;
        const double c2 = c * c;
        acc.add(c2 * c2);
      },
      RunningStats::merge);
  out.value = stats.mean;
  out.std_error = stats.std_error();
  return out;
}

MomentEstimate markov_tail_fraction(const FrequencySet& fs, const McConfig& mc) {
  const double threshold = std::pow(static_cast<double>(fs.size()), 0.75);
  const RunningStats stats = sample_reduce<RunningStats>(
      mc.samples, mc,
      [&](RunningStats& acc, std::uint64_t chunk, std::uint32_t lane) {
        const DyadicTheta theta = sample_theta(mc.seed, chunk, lane);
        double c = 0.0;
        for (auto k : fs.freqs()) c += unit_phasor(centered_phase(k, theta, 2)).re;
        acc.add(std::fabs(c) >= threshold ? 1.0 : 0.0);
      },
      RunningStats::merge);
  MomentEstimate out;
  out.value = stats.mean;
  out.std_error = stats.std_error();
  out.method = Method::monte_carlo;
  return out;
}

}  // namespace lacsum
