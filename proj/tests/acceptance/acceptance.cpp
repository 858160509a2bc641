// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Runtime limits are part of each criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lacsum/clt.hpp"
#include "lacsum/diophantine.hpp"
#include "lacsum/errors.hpp"
#include "lacsum/norms.hpp"
#include "lacsum/search.hpp"

using namespace lacsum;

namespace {

const double kPi = std::numbers::pi;
const double kRayleighMean = std::sqrt(kPi) / 2.0;
const double kPairValue = 4.0 / (kPi * std::sqrt(2.0));

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;  // <= 0: no limit
  std::function<Verdict()> body;
};

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

Verdict closed_form_pair() {
  Verdict v;
  const NormEstimate e = lp_norm_quadrature(FrequencySet{1, 2}, 1);
  const double err = std::abs(e.value - 4.0 / kPi);
  const double nerr = std::abs(e.normalized - kPairValue);
  v.require(err <= 1e-6, "value vs 4/pi");
  v.require(nerr <= 1e-6, "normalized vs 4/(pi sqrt 2)");
  v.note(fmt("|value - 4/pi| = %.2e, |normalized - 0.9003163| = %.2e", err, nerr));
  return v;
}

Verdict parseval_and_energy() {
  Verdict v;
  std::mt19937_64 gen(20260101);
  double worst2 = 0.0, worst4 = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen() % 8;
    std::vector<std::uint64_t> k;
    while (k.size() < n) {
      const std::uint64_t c = 1 + gen() % 2000;
      if (std::find(k.begin(), k.end(), c) == k.end()) k.push_back(c);
    }
    const FrequencySet fs(k);
    const double l2 = std::pow(lp_norm_quadrature(fs, 2).value, 2);
    const double l4 = std::pow(lp_norm_quadrature(fs, 4).value, 4);
    const double energy = static_cast<double>(count_quadruple_solutions(fs));
    worst2 = std::max(worst2, std::abs(l2 - static_cast<double>(n)) / static_cast<double>(n));
    worst4 = std::max(worst4, std::abs(l4 - energy) / energy);
  }
  v.require(worst2 <= 1e-9, "||S||_2^2 = n");
  v.require(worst4 <= 1e-8, "||S||_4^4 = energy");
  v.note(fmt("worst relative errors %.2e (L2), %.2e (L4)", worst2, worst4));
  return v;
}

Verdict sidon_exactness() {
  Verdict v;
  const std::uint64_t e10 = count_quadruple_solutions(mian_chowla(10));
  v.require(e10 == 190 && e10 == minimum_energy(10), "mian_chowla(10) energy 190");
  const EnergyCertificate c = holder_lower_bound(mian_chowla(50));
  v.require(c.energy == 4950, "mian_chowla(50) energy 4950");
  v.require(std::abs(c.normalized_lower_bound - 50.0 / std::sqrt(4950.0)) <= 1e-12, "bound = 50/sqrt(4950)");
  v.require(std::abs(c.normalized_lower_bound - 1.0 / std::sqrt(2.0)) <= 0.004, "bound near 1/sqrt 2");
  v.note(fmt("energy(10) = %.0f, bound(50) = %.5f", static_cast<double>(e10), c.normalized_lower_bound));
  return v;
}

Verdict lacunary_convergence() {
  Verdict v;
  McConfig mc;
  mc.samples = 10'000'000;
  mc.seed = 7;
  const std::vector<std::size_t> ns{4, 8, 16};
  const StudyReport rep = convergence_study(8, ns, mc);
  const StudyRow& last = rep.rows.back();
  v.require(std::abs(last.normalized_l1 - kRayleighMean) <= 0.05, "n = 16 within 0.05 of sqrt(pi)/2");
  for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i) {
    const StudyRow& a = rep.rows[i];
    const StudyRow& b = rep.rows[i + 1];
    const double slack = 4.0 * std::hypot(a.std_error, b.std_error);
    v.require(std::abs(b.gap_to_limit) <= std::abs(a.gap_to_limit) + slack,
              "gap non-increasing from n = " + std::to_string(a.n));
  }
  for (const StudyRow& r : rep.rows)
    v.note(fmt("n=%.0f: %.5f +- %.5f", static_cast<double>(r.n), r.normalized_l1, r.std_error));
  return v;
}

Verdict gaussian_moment() {
  Verdict v;
  const MeanWithError m = simulate_gaussian_abs_mean({0.5}, 1'000'000, 7);
  const double err = std::abs(m.value - kRayleighMean);
  v.require(err <= 0.005, "mean radius within 0.005 of sqrt(pi)/2");
  v.note(fmt("mean radius %.5f +- %.5f (off by %.2e)", m.value, m.std_error, err));
  return v;
}

Verdict alpha_has_unit_mean() {
  Verdict v;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const FrequencySet fs = lacunary_set(8, n);
    for (double s : {0.5, 1.0})
      for (double t : {0.5, 1.0}) worst = std::max(worst, std::abs(alpha_mean(fs, s, t) - 1.0));
  }
  v.require(worst <= 1e-6, "|E alpha - 1| <= 1e-6");
  v.note(fmt("worst |E alpha - 1| = %.2e", worst));
  return v;
}

Verdict w_remainder_checks() {
  Verdict v;
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_ratio = 0.0, worst_rebuild = 0.0;
  for (int i = 0; i < 10'000; ++i) {
    const double x = u(gen);
    const std::complex<double> w = w_remainder(x);
    worst_ratio = std::max(worst_ratio, std::abs(w) / std::abs(x * x * x));
    const auto rebuilt = std::complex<double>(1.0, x) * std::exp(-x * x / 2.0 + w);
    worst_rebuild = std::max(worst_rebuild, std::abs(rebuilt - std::polar(1.0, x)));
  }
  v.require(worst_ratio <= 1.0, "|w(x)| <= |x|^3");
  v.require(worst_rebuild <= 1e-14, "reconstruction to 1e-14");
  v.note(fmt("max |w|/|x|^3 = %.4f, max reconstruction error = %.2e", worst_ratio, worst_rebuild));

  const std::complex<double> third(0.0, 1.0 / 3.0);
  double worst_cubic = 0.0, worst_imag = 0.0;
  for (double x : {1e-2, -1e-2}) {
    const std::complex<double> ratio = w_remainder(x) / (x * x * x);
    worst_cubic = std::max(worst_cubic, std::abs(ratio - third));
    worst_imag = std::max(worst_imag, std::abs(ratio.imag() - 1.0 / 3.0));
  }
  v.require(worst_cubic <= 1e-3, "|w(x)/x^3 - i/3| <= 1e-3 at |x| = 1e-2");
  v.note(fmt("|w(x)/x^3 - i/3| = %.3e at |x| = 1e-2 (real part x/4 = %.1e; imaginary part off by %.1e)",
             worst_cubic, 0.25e-2, worst_imag));
  return v;
}

Verdict fourth_moment_and_markov() {
  Verdict v;
  McConfig mc;
  mc.samples = 1'000'000;
  mc.seed = 8;
  for (std::size_t n = 2; n <= 8; ++n) {
    const FrequencySet fs = lacunary_set(8, n);
    MomentEstimate m4;
    try {
      m4 = fourth_moment_cos(fs, Method::quadrature, {}, mc);
    } catch (const FrequencyTooLarge&) {
      m4 = fourth_moment_cos(fs, Method::monte_carlo, {}, mc);
    }
    const MomentEstimate tail = markov_tail_fraction(fs, mc);
    const double nn = static_cast<double>(n);
    v.require(m4.value <= nn * nn + 3.0 * m4.std_error, "fourth moment <= n^2 at n = " + std::to_string(n));
    v.require(tail.value <= 1.0 / nn + 3.0 * tail.std_error, "tail <= 1/n at n = " + std::to_string(n));
    v.note(fmt("n=%.0f: m4 %.3f, tail %.4f", nn, m4.value, tail.value));
  }
  return v;
}

Verdict char_fn_convergence() {
  Verdict v;
  McConfig mc;
  mc.samples = 1'000'000;
  mc.seed = 9;
  const auto grid = default_phi_grid();
  double worst_excess = -INFINITY;
  int informative = 0;
  for (const CharFnPoint& p : empirical_char_fn(lacunary_set(8, 16), grid, mc)) {
    const double dev = std::abs(p.phi - p.gaussian);
    worst_excess = std::max(worst_excess, dev - 3.0 * p.std_error);
    v.require(dev <= 0.01 + 3.0 * p.std_error, fmt("|phi - gaussian| at (%g, %g)", p.s, p.t));
    const double bound = deviation_bound(p.s, p.t, 16);
    if (bound < 1.0) {
      ++informative;
      v.require(dev <= bound + 4.0 * p.std_error, fmt("deviation bound at (%g, %g)", p.s, p.t));
    }
  }
  v.note(fmt("max (|phi - gaussian| - 3 se) = %.4f; %.0f points with bound < 1", worst_excess, informative));
  return v;
}

Verdict smoothing_arithmetic() {
  Verdict v;
  const double a = smoothing_bound({2, 2, 1, 1, 1, 1, 0});
  const double b = smoothing_bound({1, 2, 2, 1, 1, 3, 0.1});
  // Hand-derived: 1*1*(1*e^-2 + 1*e^-2) and 3*0.1 + 3*(0.5 e^-2 + 2 e^-2).
  const double a_ref = 2.0 * std::exp(-2.0);
  const double b_ref = 0.3 + 7.5 * std::exp(-2.0);
  v.require(std::abs(a - a_ref) <= 1e-12, "2 e^-2");
  v.require(std::abs(b - b_ref) <= 1e-12, "0.3 + 7.5 e^-2");
  v.note(fmt("%.12f, %.12f", a, b));
  return v;
}

Verdict final_chain() {
  Verdict v;
  McConfig mc;
  mc.samples = 1'000'000;
  mc.seed = 11;
  const CltReport r = clt_report(lacunary_set(8, 16), mc, default_phi_grid(), true);
  for (const ChainCheck& c : r.chain_audit->checks) {
    v.require(c.holds, c.name);
    v.note(fmt("%.4f vs %.4f (se %.1e)", c.lhs, c.rhs, c.std_error) + " " + c.name);
  }
  return v;
}

Verdict search_correctness() {
  Verdict v;
  std::vector<SearchResult> results;
  for (std::uint64_t m : {2, 5, 10}) {
    results.push_back(exhaustive_sigma(2, m));
    v.require(std::abs(results.back().best_value - kPairValue) <= 1e-6, "pair value at m = " + std::to_string(m));
  }
  for (std::uint64_t m : {1, 10}) {
    results.push_back(exhaustive_sigma(1, m));
    v.require(results.back().best_value == 1.0, "singleton value 1");
  }
  results.push_back(exhaustive_sigma(3, 12));
  results.push_back(exhaustive_sigma(4, 16));
  results.push_back(anneal_sigma(3, 30, 10'000, 1));
  results.push_back(anneal_sigma(5, 60, 2'000, 2));
  for (const SearchResult& r : results) {
    const double cert = holder_lower_bound(r.best_set).normalized_lower_bound;
    v.require(r.best_value >= cert, "value dominates its certificate (n = " + std::to_string(r.n) + ")");
    v.require(r.best_value <= 1.0, "value <= 1");
  }
  v.note(fmt("sigma_3(12) = %.10f, sigma_4(16) = %.10f", results[5].best_value, results[6].best_value));
  return v;
}

Verdict determinism() {
  Verdict v;
  const FrequencySet fs = lacunary_set(8, 16);
  std::vector<std::vector<double>> runs;
  for (unsigned workers : {1u, 4u, 8u}) {
    McConfig mc;
    mc.samples = 500'000;
    mc.seed = 13;
    mc.workers = workers;
    std::vector<double> out;
    const NormEstimate l1 = l1_monte_carlo(fs, mc);
    out.push_back(l1.value);
    out.push_back(*l1.std_error);
    out.push_back(lp_monte_carlo(fs, 4, mc).value);
    McConfig anti = mc;
    anti.antithetic = true;
    out.push_back(l1_monte_carlo(fs, anti).value);
    out.push_back(fourth_moment_cos(fs, Method::monte_carlo, {}, mc).value);
    out.push_back(markov_tail_fraction(fs, mc).value);
    McConfig small = mc;
    small.samples = 100'000;
    const CltReport r = clt_report(fs, small, default_phi_grid(), true);
    out.insert(out.end(), {r.radial_mean, r.ks_mu, r.ks_nu, r.cov_hat[0][1]});
    for (const CharFnPoint& p : r.phi_grid) out.insert(out.end(), {p.phi.real(), p.phi.imag()});
    for (const ChainCheck& c : r.chain_audit->checks) out.insert(out.end(), {c.lhs, c.rhs});
    const MeanWithError g = simulate_gaussian_abs_mean({0.5}, 300'000, 13, workers);
    out.insert(out.end(), {g.value, g.std_error});
    const std::vector<std::size_t> ns{3, 6};
    for (const StudyRow& row : convergence_study(8, ns, small).rows) out.push_back(row.normalized_l1);
    SearchConfig sc;
    sc.workers = workers;
    out.push_back(anneal_sigma(4, 40, 500, 13, sc).best_value);
    runs.push_back(std::move(out));
  }
  std::size_t mismatches = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    for (std::size_t i = 0; i < runs[0].size(); ++i) mismatches += !same_bits(runs[0][i], runs[r][i]);
  v.require(mismatches == 0, "bit-identical across 1, 4, 8 workers");
  v.note(fmt("%.0f quantities compared, %.0f mismatches", static_cast<double>(runs[0].size()),
             static_cast<double>(mismatches)));
  return v;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "closed form for {1,2}", 1, closed_form_pair},
      {2, "Parseval and L4 energy oracle", 60, parseval_and_energy},
      {3, "Sidon energy and Holder bound", 5, sidon_exactness},
      {4, "lacunary convergence toward sqrt(pi)/2", 600, lacunary_convergence},
      {5, "Gaussian mean radius", 10, gaussian_moment},
      {6, "unit mean of the product alpha", 60, alpha_has_unit_mean},
      {7, "w remainder", 1, w_remainder_checks},
      {8, "fourth moment and Markov tail", 60, fourth_moment_and_markov},
      {9, "characteristic function convergence", 60, char_fn_convergence},
      {10, "smoothing bound arithmetic", 0, smoothing_arithmetic},
      {11, "final chain audit", 120, final_chain},
      {12, "search correctness", 60, search_correctness},
      {13, "determinism across worker counts", 0, determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      v.pass = false;
      v.note(fmt("over the %.0f s limit", c.limit_seconds));
    }
    if (!v.pass) ++failures;
    std::printf("AC%-2d %s  %-40s %8.2f s  %s\n", c.id, v.pass ? "PASS" : "FAIL", c.title, secs,
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
