#include "lacsum/clt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lacsum/errors.hpp"
#include "lacsum/exponential_sum.hpp"
#include "lacsum/stats.hpp"

namespace lacsum {

namespace {

using cplx = std::complex<double>;

// Plain complex product; operator* on std::complex goes through the
// NaN-recovering library path, which is far slower in the quadrature loop.
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void require_finite_args(double s, double t) {
  if (!std::isfinite(s) || !std::isfinite(t)) throw DomainError("s and t must be finite");
}

constexpr double kSqrtPiOver2 = 0.88622692545275801365;  // sqrt(pi) / 2

}  // namespace

bool FinalChainAudit::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const ChainCheck& c) { return c.holds; });
}

std::complex<double> w_remainder(double x) {
  if (!(std::fabs(x) < 1.0)) throw DomainError("w_remainder needs |x| < 1");
  const double ax = std::fabs(x);
  if (ax < 1e-3) {
    // Series: w = x^4/4 - x^6/6 + x^8/8 + i (x^3/3 - x^5/5 + x^7/7).
    const double x2 = x * x;
    const double re = x2 * x2 * (0.25 - x2 * (1.0 / 6.0 - x2 / 8.0));
    const double im = x * x2 * (1.0 / 3.0 - x2 * (0.2 - x2 / 7.0));
    return {re, im};
  }
  // Log(1 + ix) = log(1 + x^2)/2 + i atan(x).
  return {0.5 * (x * x - std::log1p(x * x)), x - std::atan(x)};
}

std::complex<double> alpha_at(const FrequencySet& fs, double s, double t, double theta) {
  require_finite_args(s, t);
  const TrigTerms tt = trig_terms(fs, theta);
  const double root_n = std::sqrt(static_cast<double>(fs.size()));
  cplx a{1.0, 0.0};
  for (std::size_t j = 0; j < fs.size(); ++j) {
    a = mul(a, {1.0, s * tt.sin[j] / root_n});
    a = mul(a, {1.0, t * tt.cos[j] / root_n});
  }
  return a;
}

std::complex<double> beta_at(const FrequencySet& fs, double s, double t, double theta) {
  require_finite_args(s, t);
  const TrigTerms tt = trig_terms(fs, theta);
  const double n = static_cast<double>(fs.size());
  const double root_n = std::sqrt(n);
  cplx b{0.0, 0.0};
  for (std::size_t j = 0; j < fs.size(); ++j) {
    const double cos2 = tt.cos[j] * tt.cos[j] - tt.sin[j] * tt.sin[j];
    b += (s * s - t * t) * cos2 / (4.0 * n);
    b += w_remainder(s * tt.sin[j] / root_n);
    b += w_remainder(t * tt.cos[j] / root_n);
  }
  return b;
}

double alpha_modulus_bound(const FrequencySet& fs, double s, double t, double theta) {
  require_finite_args(s, t);
  const TrigTerms tt = trig_terms(fs, theta);
  const double n = static_cast<double>(fs.size());
  double e = (s * s + t * t) / 4.0;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    const double cos2 = tt.cos[j] * tt.cos[j] - tt.sin[j] * tt.sin[j];
    e += (t * t - s * s) * cos2 / (4.0 * n);
  }
  return std::exp(e);
}

std::complex<double> product_moment(const FrequencySet& fs, std::span<const int> delta,
                                    std::span<const int> delta_hat, double s, double t,
                                    const QuadratureConfig& cfg) {
  require_finite_args(s, t);
  if (delta.size() != fs.size() || delta_hat.size() != fs.size()) {
    throw InvalidInput("selector vectors must have one entry per frequency");
  }
  auto is_bit = [](int v) { return v == 0 || v == 1; };
  if (!std::all_of(delta.begin(), delta.end(), is_bit) ||
      !std::all_of(delta_hat.begin(), delta_hat.end(), is_bit)) {
    throw InvalidInput("selector entries must be 0 or 1");
  }
  return integrate_periodic<cplx>(fs.freqs(), fs.max(), cfg, [&](std::span<const Phasor> z) {
    cplx prod{1.0, 0.0};
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (delta[j]) prod = mul(prod, {0.0, s * z[j].im});
      if (delta_hat[j]) prod = mul(prod, {0.0, t * z[j].re});
    }
    return prod;
  });
}

std::complex<double> alpha_mean(const FrequencySet& fs, double s, double t,
                                const QuadratureConfig& cfg) {
  require_finite_args(s, t);
  if (s == 0.0 && t == 0.0) return {1.0, 0.0};
  const double root_n = std::sqrt(static_cast<double>(fs.size()));
  const double sn = s / root_n;
  const double tn = t / root_n;
  return integrate_periodic<cplx>(fs.freqs(), fs.max(), cfg, [&](std::span<const Phasor> z) {
    cplx a{1.0, 0.0};
    for (const auto& w : z) {
      a = mul(a, {1.0, sn * w.im});
      a = mul(a, {1.0, tn * w.re});
    }
    return a;
  });
}

std::vector<GridPoint> default_phi_grid() {
  static constexpr double kAxis[] = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  std::vector<GridPoint> grid;
  for (double s : kAxis) {
    for (double t : kAxis) grid.emplace_back(s, t);
  }
  return grid;
}

double deviation_bound(double s, double t, std::uint64_t n) {
  if (n < 1) throw InvalidInput("deviation_bound needs n >= 1");
  const double nd = static_cast<double>(n);
  const double r2 = s * s + t * t;
  const double cubic = std::fabs(s * s * s) + std::fabs(t * t * t);
  return std::expm1(cubic / std::sqrt(nd)) + std::expm1(r2 / std::pow(nd, 0.25)) +
         std::exp(r2) / nd;
}

double gaussian_abs_mean(GaussianSpec g) {
  if (!(g.sigma2 >= 0.0)) throw DomainError("sigma2 must be nonnegative");
  return std::sqrt(std::numbers::pi * g.sigma2 / 2.0);
}

double gaussian_truncated_abs_mean(GaussianSpec g, double radius) {
  if (!(g.sigma2 >= 0.0)) throw DomainError("sigma2 must be nonnegative");
  if (g.sigma2 == 0.0 || radius <= 0.0) return 0.0;
  // |G| is Rayleigh with scale sqrt(sigma2).
  const double scale = std::sqrt(2.0 * g.sigma2);
  return gaussian_abs_mean(g) * std::erf(radius / scale) -
         radius * std::exp(-radius * radius / (2.0 * g.sigma2));
}

MeanWithError simulate_gaussian_abs_mean(GaussianSpec g, std::uint64_t samples, std::uint64_t seed,
                                         unsigned workers) {
  if (!(g.sigma2 >= 0.0)) throw DomainError("sigma2 must be nonnegative");
  McConfig mc;
  mc.samples = samples;
  mc.seed = seed;
  mc.workers = workers;
  const double sigma = std::sqrt(g.sigma2);
  const RunningStats stats = sample_reduce<RunningStats>(
      samples, mc,
      [&](RunningStats& acc, std::uint64_t chunk, std::uint32_t lane) {
        const auto words = rng::draw(seed, rng::Domain::gaussian_sim, chunk, lane);
        const auto [a, b] = rng::standard_normal_pair(words[0], words[1]);
        acc.add(sigma * std::hypot(a, b));
      },
      RunningStats::merge);
  return {stats.mean, stats.std_error()};
}

double smoothing_bound(const SmoothingInputs& in) {
  const double fields[] = {in.t1, in.t2, in.delta1, in.delta2, in.x, in.y};
  for (double v : fields) {
    if (!(v > 0.0)) throw InvalidInput("smoothing inputs T1, T2, delta1, delta2, x, y must be positive");
  }
  if (!(in.integral_term >= 0.0)) throw InvalidInput("integral_term must be nonnegative");
  const double xy = in.x * in.y;
  const double tail1 = in.delta2 / in.delta1 * std::exp(-in.t1 * in.t1 * in.delta1 * in.delta1 / 2.0);
  const double tail2 = in.delta1 / in.delta2 * std::exp(-in.t2 * in.t2 * in.delta2 * in.delta2 / 2.0);
  return xy * in.integral_term + xy * (tail1 + tail2);
}

namespace {

struct ChainAcc {
  RunningStats x, xz, xz_trunc, yz, yz_trunc, z;
  // Per-sample differences behind each inequality.
  RunningStats triangle, trunc_xz, trunc_yz;

  static ChainAcc merge(const ChainAcc& a, const ChainAcc& b) {
    ChainAcc o;
    o.x = RunningStats::merge(a.x, b.x);
    o.xz = RunningStats::merge(a.xz, b.xz);
    o.xz_trunc = RunningStats::merge(a.xz_trunc, b.xz_trunc);
    o.yz = RunningStats::merge(a.yz, b.yz);
    o.yz_trunc = RunningStats::merge(a.yz_trunc, b.yz_trunc);
    o.z = RunningStats::merge(a.z, b.z);
    o.triangle = RunningStats::merge(a.triangle, b.triangle);
    o.trunc_xz = RunningStats::merge(a.trunc_xz, b.trunc_xz);
    o.trunc_yz = RunningStats::merge(a.trunc_yz, b.trunc_yz);
    return o;
  }
};

struct SampleAcc {
  RunningStats modulus;
  RunningCovariance cov;
  std::vector<RunningStats> phi_re, phi_im;
  std::vector<double> mu, nu;
  ChainAcc chain;

  static SampleAcc merge(SampleAcc a, SampleAcc b) {
    SampleAcc o;
    o.modulus = RunningStats::merge(a.modulus, b.modulus);
    o.cov = RunningCovariance::merge(a.cov, b.cov);
    if (a.phi_re.empty()) {
      o.phi_re = std::move(b.phi_re);
      o.phi_im = std::move(b.phi_im);
    } else if (b.phi_re.empty()) {
      o.phi_re = std::move(a.phi_re);
      o.phi_im = std::move(a.phi_im);
    } else {
      o.phi_re.resize(a.phi_re.size());
      o.phi_im.resize(a.phi_im.size());
      for (std::size_t i = 0; i < a.phi_re.size(); ++i) {
        o.phi_re[i] = RunningStats::merge(a.phi_re[i], b.phi_re[i]);
        o.phi_im[i] = RunningStats::merge(a.phi_im[i], b.phi_im[i]);
      }
    }
    o.mu = std::move(a.mu);
    o.mu.insert(o.mu.end(), b.mu.begin(), b.mu.end());
    o.nu = std::move(a.nu);
    o.nu.insert(o.nu.end(), b.nu.begin(), b.nu.end());
    o.chain = ChainAcc::merge(a.chain, b.chain);
    return o;
  }
};

struct SampleOptions {
  bool keep_marginals = false;
  bool chain = false;
  double smoothing_sigma = 0.0;
  double radius = 0.0;
};

SampleAcc sample_mu_nu(const FrequencySet& fs, const McConfig& mc, std::span<const GridPoint> grid,
                       const SampleOptions& opt) {
  validate(mc);
  const double root_n = std::sqrt(static_cast<double>(fs.size()));
  const double y_sigma = std::sqrt(0.5);
  return sample_reduce<SampleAcc>(
      mc.samples, mc,
      [&](SampleAcc& acc, std::uint64_t chunk, std::uint32_t lane) {
        if (acc.phi_re.size() != grid.size()) {
          acc.phi_re.resize(grid.size());
          acc.phi_im.resize(grid.size());
          if (opt.keep_marginals) {
            acc.mu.reserve(mc.chunk_size);
            acc.nu.reserve(mc.chunk_size);
          }
        }
        const SumValue sv = evaluate_sum(fs, sample_theta(mc.seed, chunk, lane));
        const double modulus = sum_modulus(fs, sv);
        const double mu = sv.im / root_n;
        const double nu = sv.re / root_n;
        acc.modulus.add(modulus);
        acc.cov.add(mu, nu);
        for (std::size_t g = 0; g < grid.size(); ++g) {
          const double arg = grid[g].first * mu + grid[g].second * nu;
          acc.phi_re[g].add(std::cos(arg));
          acc.phi_im[g].add(std::sin(arg));
        }
        if (opt.keep_marginals) {
          acc.mu.push_back(mu);
          acc.nu.push_back(nu);
        }
        if (opt.chain) {
          const auto zw = rng::draw(mc.seed, rng::Domain::gaussian_z, chunk, lane);
          const auto yw = rng::draw(mc.seed, rng::Domain::gaussian_y, chunk, lane);
          auto [z1, z2] = rng::standard_normal_pair(zw[0], zw[1]);
          auto [y1, y2] = rng::standard_normal_pair(yw[0], yw[1]);
          z1 *= opt.smoothing_sigma;
          z2 *= opt.smoothing_sigma;
          y1 *= y_sigma;
          y2 *= y_sigma;
          const double ax = modulus / root_n;
          const double axz = std::hypot(mu + z1, nu + z2);
          const double az = std::hypot(z1, z2);
          const double ayz = std::hypot(y1 + z1, y2 + z2);
          const double axz_t = axz <= opt.radius ? axz : 0.0;
          const double ayz_t = ayz <= opt.radius ? ayz : 0.0;
          ChainAcc& c = acc.chain;
          c.x.add(ax);
          c.xz.add(axz);
          c.xz_trunc.add(axz_t);
          c.yz.add(ayz);
          c.yz_trunc.add(ayz_t);
          c.z.add(az);
          c.triangle.add(ax - (axz - az));
          c.trunc_xz.add(axz - axz_t);
          c.trunc_yz.add(ayz - ayz_t);
        }
      },
      SampleAcc::merge);
}

MeanWithError summarize(const RunningStats& s) { return {s.mean, s.std_error()}; }

ChainCheck inequality(std::string name, double lhs, double rhs, double se) {
  return {std::move(name), lhs, rhs, se, false, lhs >= rhs - 4.0 * se};
}

ChainCheck equality(std::string name, double measured, double exact, double se) {
  return {std::move(name), measured, exact, se, true, std::fabs(measured - exact) <= 4.0 * se};
}

}  // namespace

std::vector<CharFnPoint> empirical_char_fn(const FrequencySet& fs, std::span<const GridPoint> grid,
                                           const McConfig& mc) {
  for (const auto& [s, t] : grid) require_finite_args(s, t);
  const SampleAcc acc = sample_mu_nu(fs, mc, grid, {});
  std::vector<CharFnPoint> out;
  out.reserve(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    CharFnPoint p;
    p.s = grid[g].first;
    p.t = grid[g].second;
    p.phi = {acc.phi_re[g].mean, acc.phi_im[g].mean};
    p.std_error = std::sqrt((acc.phi_re[g].variance() + acc.phi_im[g].variance()) /
                            static_cast<double>(acc.phi_re[g].count));
    p.gaussian = std::exp(-(p.s * p.s + p.t * p.t) / 4.0);
    out.push_back(p);
  }
  return out;
}

CltReport clt_report(const FrequencySet& fs, const McConfig& mc, std::span<const GridPoint> grid,
                     bool with_chain_audit) {
  for (const auto& [s, t] : grid) require_finite_args(s, t);
  if (with_chain_audit && fs.size() < 2) {
    throw DomainError("the chain audit needs n >= 2 so that log n > 0");
  }
  const double log_n = std::log(static_cast<double>(fs.size()));
  SampleOptions opt;
  opt.keep_marginals = true;
  opt.chain = with_chain_audit;
  if (with_chain_audit) {
    opt.smoothing_sigma = std::sqrt(std::pow(log_n, -0.125));
    opt.radius = std::pow(log_n, 0.25);
  }
  SampleAcc acc = sample_mu_nu(fs, mc, grid, opt);

  CltReport rep;
  rep.n = fs.size();
  rep.samples = mc.samples;
  rep.seed = mc.seed;
  const double root_n = std::sqrt(static_cast<double>(fs.size()));
  rep.radial_mean = acc.modulus.mean / root_n;
  rep.radial_std_error = acc.modulus.std_error() / root_n;

  const double denom = acc.cov.count > 1 ? static_cast<double>(acc.cov.count - 1) : 1.0;
  rep.cov_hat = {{{acc.cov.cxx / denom, acc.cov.cxy / denom}, {acc.cov.cxy / denom, acc.cov.cyy / denom}}};

  rep.sorted_mu = std::move(acc.mu);
  rep.sorted_nu = std::move(acc.nu);
  std::sort(rep.sorted_mu.begin(), rep.sorted_mu.end());
  std::sort(rep.sorted_nu.begin(), rep.sorted_nu.end());
  rep.ks_mu = ks_statistic_normal(rep.sorted_mu, 0.5);
  rep.ks_nu = ks_statistic_normal(rep.sorted_nu, 0.5);

  for (std::size_t g = 0; g < grid.size(); ++g) {
    CharFnPoint p;
    p.s = grid[g].first;
    p.t = grid[g].second;
    p.phi = {acc.phi_re[g].mean, acc.phi_im[g].mean};
    p.std_error = std::sqrt((acc.phi_re[g].variance() + acc.phi_im[g].variance()) /
                            static_cast<double>(acc.phi_re[g].count));
    p.gaussian = std::exp(-(p.s * p.s + p.t * p.t) / 4.0);
    rep.phi_grid.push_back(p);
  }

  if (with_chain_audit) {
    const ChainAcc& c = acc.chain;
    FinalChainAudit audit;
    audit.e_abs_x = summarize(c.x);
    audit.e_abs_xz = summarize(c.xz);
    audit.e_abs_xz_trunc = summarize(c.xz_trunc);
    audit.e_abs_yz = summarize(c.yz);
    audit.e_abs_yz_trunc = summarize(c.yz_trunc);
    audit.e_abs_z = summarize(c.z);
    audit.truncation_radius = opt.radius;
    audit.smoothing_variance = opt.smoothing_sigma * opt.smoothing_sigma;

    const GaussianSpec z_spec{audit.smoothing_variance};
    const GaussianSpec yz_spec{0.5 + audit.smoothing_variance};
    audit.checks.push_back(inequality("E|X| >= E|X+Z| - E|Z|", c.x.mean, c.xz.mean - c.z.mean,
                                      c.triangle.std_error()));
    audit.checks.push_back(inequality("E|X+Z| >= E|X+Z| 1{|X+Z| <= R}", c.xz.mean,
                                      c.xz_trunc.mean, c.trunc_xz.std_error()));
    audit.checks.push_back(inequality("E|Y+Z| >= E|Y+Z| 1{|Y+Z| <= R}", c.yz.mean,
                                      c.yz_trunc.mean, c.trunc_yz.std_error()));
    audit.checks.push_back(
        inequality("E|Y+Z| >= sqrt(pi)/2", c.yz.mean, kSqrtPiOver2, c.yz.std_error()));
    audit.checks.push_back(
        equality("E|Z| = sqrt(pi sigma^2 / 2)", c.z.mean, gaussian_abs_mean(z_spec), c.z.std_error()));
    audit.checks.push_back(equality("E|Y+Z| = sqrt(pi (1/2 + sigma^2) / 2)", c.yz.mean,
                                    gaussian_abs_mean(yz_spec), c.yz.std_error()));
    audit.checks.push_back(equality("E|Y+Z| 1{|Y+Z| <= R} = truncated Rayleigh mean",
                                    c.yz_trunc.mean, gaussian_truncated_abs_mean(yz_spec, opt.radius),
                                    c.yz_trunc.std_error()));
    rep.chain_audit = std::move(audit);
  }
  return rep;
}

}  // namespace lacsum
