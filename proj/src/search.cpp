#include "lacsum/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <string>

#include "lacsum/errors.hpp"
#include "lacsum/norms.hpp"
#include "lacsum/random.hpp"

namespace lacsum {

namespace {

constexpr double kSqrtPiOver2 = 0.88622692545275801365;
constexpr double kTieTolerance = 1e-12;

using Set = std::vector<std::uint64_t>;

double normalized_l1(const Set& set, const QuadratureConfig& cfg) {
  const FrequencySet fs(set);
  if (fs.size() == 1) return 1.0;  // |S| is identically 1
  return lp_norm_quadrature(fs, 1, cfg).normalized;
}

// a is better than b: larger value, or a tie and lexicographically smaller.
bool better(double va, const Set& a, double vb, const Set& b) {
  const double scale = std::max(std::fabs(va), std::fabs(vb));
  if (std::fabs(va - vb) > kTieTolerance * scale) return va > vb;
  return a < b;
}

struct Candidate {
  Set set;
  double value;
};

// Re-evaluates the top candidates at fine accuracy and fills the result.
SearchResult finish(std::size_t n, std::vector<Candidate> screened, const SearchConfig& cfg,
                    SearchMethod method, std::uint64_t evaluations) {
  std::sort(screened.begin(), screened.end(), [](const Candidate& a, const Candidate& b) {
    return better(a.value, a.set, b.value, b.set);
  });
  screened.resize(std::min(screened.size(), std::max<std::size_t>(cfg.top_k, 1)));

  std::vector<double> fine(screened.size());
  parallel_for(screened.size(), cfg.workers,
               [&](std::size_t i) { fine[i] = normalized_l1(screened[i].set, cfg.fine); });
  evaluations += screened.size();

  std::size_t best = 0;
  for (std::size_t i = 1; i < screened.size(); ++i) {
    if (better(fine[i], screened[i].set, fine[best], screened[best].set)) best = i;
  }
  QuadratureConfig denser = cfg.fine;
  denser.points_per_period *= 2;
  const double check = normalized_l1(screened[best].set, denser);
  ++evaluations;

  SearchResult res;
  res.n = n;
  res.best_set = FrequencySet(screened[best].set);
  res.best_value = fine[best];
  res.method = method;
  res.evaluations = evaluations;
  res.value_error = std::fabs(check - fine[best]);
  return res;
}

double binomial(std::uint64_t m, std::uint64_t k) {
  double r = 1.0;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<double>(m - k + i) / static_cast<double>(i);
  return r;
}

void require_search_args(std::size_t n, std::uint64_t max_freq) {
  if (n < 1) throw InvalidInput("search needs n >= 1");
  if (max_freq < n) throw InvalidInput("max_freq must be at least n");
}

}  // namespace

std::string_view to_string(SearchMethod m) {
  return m == SearchMethod::exhaustive ? "exhaustive" : "anneal";
}

FrequencySet canonicalize(const FrequencySet& fs) {
  const std::uint64_t base = fs.min();
  std::uint64_t g = 0;
  for (auto k : fs.freqs()) g = std::gcd(g, k - base);
  std::vector<std::uint64_t> out;
  out.reserve(fs.size());
  for (auto k : fs.freqs()) out.push_back(g == 0 ? 1 : 1 + (k - base) / g);
  return FrequencySet(std::move(out));
}

bool is_canonical(const FrequencySet& fs) { return canonicalize(fs) == fs; }

SearchResult exhaustive_sigma(std::size_t n, std::uint64_t max_freq, const SearchConfig& cfg) {
  require_search_args(n, max_freq);
  if (n == 1) {
    SearchResult res;
    res.n = 1;
    res.best_value = 1.0;
    res.evaluations = 0;
    return res;
  }
  const double space = binomial(max_freq - 1, n - 1);
  if (space > static_cast<double>(cfg.max_candidates)) {
    throw SearchSpaceTooLarge("exhaustive search over " + std::to_string(space) +
                              " sets exceeds the limit of " + std::to_string(cfg.max_candidates));
  }

  // Canonical sets: {1 < a_2 < ... < a_n <= max_freq} with gcd(a_j - 1) = 1.
  std::vector<Candidate> candidates;
  Set cur(n);
  cur[0] = 1;
  auto recurse = [&](auto&& self, std::size_t pos, std::uint64_t lo, std::uint64_t g) -> void {
    if (pos == n) {
      if (g == 1) candidates.push_back({cur, 0.0});
      return;
    }
    const std::uint64_t remaining = n - pos - 1;
    for (std::uint64_t v = lo; v + remaining <= max_freq; ++v) {
      cur[pos] = v;
      self(self, pos + 1, v + 1, std::gcd(g, v - 1));
    }
  };
  recurse(recurse, 1, 2, 0);

  parallel_for(candidates.size(), cfg.workers, [&](std::size_t i) {
    candidates[i].value = normalized_l1(candidates[i].set, cfg.coarse);
  });
  const std::uint64_t evals = candidates.size();
  return finish(n, std::move(candidates), cfg, SearchMethod::exhaustive, evals);
}

SearchResult anneal_sigma(std::size_t n, std::uint64_t max_freq, std::uint64_t budget,
                          std::uint64_t seed, const SearchConfig& cfg) {
  require_search_args(n, max_freq);
  if (budget < 1) throw InvalidInput("annealing budget must be >= 1");
  if (n == 1) {
    SearchResult res;
    res.n = 1;
    res.best_value = 1.0;
    res.method = SearchMethod::anneal;
    res.seed = seed;
    return res;
  }
  rng::CounterStream stream(seed, rng::Domain::search);
  std::map<Set, double> cache;
  std::uint64_t evaluations = 0;
  auto value_of = [&](const Set& s) {
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
    ++evaluations;
    const double v = normalized_l1(s, cfg.coarse);
    cache.emplace(s, v);
    return v;
  };
  auto canonical = [](Set s) { return canonicalize(FrequencySet(std::move(s))).values(); };
  auto random_set = [&] {
    Set s;
    while (s.size() < n) {
      const std::uint64_t v = 1 + stream.next_below(max_freq);
      if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
    }
    return canonical(std::move(s));
  };

  // Initial temperature: spread of the objective over random sets.
  std::vector<double> probe;
  for (int i = 0; i < 100; ++i) probe.push_back(value_of(random_set()));
  const double mean = std::accumulate(probe.begin(), probe.end(), 0.0) / probe.size();
  double var = 0.0;
  for (double v : probe) var += (v - mean) * (v - mean);
  double t0 = std::sqrt(var / (probe.size() - 1));
  if (!(t0 > 0.0)) t0 = 1e-3;

  Set current = random_set();
  double current_value = value_of(current);
  for (std::uint64_t step = 0; step < budget; ++step) {
    const double temperature = t0 * std::pow(1e-3, static_cast<double>(step) / static_cast<double>(budget));
    Set next = current;
    const std::size_t j = stream.next_below(n);
    std::uint64_t v = 0;
    for (int tries = 0; tries < 64; ++tries) {
      const std::uint64_t c = 1 + stream.next_below(max_freq);
      if (std::find(next.begin(), next.end(), c) == next.end()) {
        v = c;
        break;
      }
    }
    if (v == 0) continue;
    next[j] = v;
    next = canonical(std::move(next));
    const double next_value = value_of(next);
    const double delta = next_value - current_value;
    if (delta >= 0.0 || stream.next_uniform() < std::exp(delta / temperature)) {
      current = std::move(next);
      current_value = next_value;
    }
  }

  std::vector<Candidate> screened;
  screened.reserve(cache.size());
  for (const auto& [set, value] : cache) screened.push_back({set, value});
  SearchResult res = finish(n, std::move(screened), cfg, SearchMethod::anneal, evaluations);
  res.seed = seed;
  return res;
}

StudyReport convergence_study(std::uint64_t q, std::span<const std::size_t> n_list,
                              const McConfig& mc) {
  if (n_list.empty()) throw InvalidInput("convergence study needs at least one n");
  StudyReport rep;
  rep.q = q;
  rep.limit = kSqrtPiOver2;
  for (std::size_t n : n_list) {
    const FrequencySet fs = lacunary_set(q, n);
    const NormEstimate est = l1_monte_carlo(fs, mc);
    StudyRow row;
    row.n = n;
    row.normalized_l1 = est.normalized;
    row.std_error = *est.std_error / std::sqrt(static_cast<double>(n));
    row.gap_to_limit = rep.limit - est.normalized;
    rep.rows.push_back(row);
  }
  const auto sup = std::max_element(rep.rows.begin(), rep.rows.end(), [](const auto& a, const auto& b) {
    return a.normalized_l1 < b.normalized_l1;
  });
  rep.sup_value = sup->normalized_l1;
  rep.sup_n = sup->n;
  const auto largest = std::max_element(rep.rows.begin(), rep.rows.end(),
                                        [](const auto& a, const auto& b) { return a.n < b.n; });
  rep.trend_value = largest->normalized_l1;
  rep.trend_n = largest->n;

  double sxx = 0.0, sxy = 0.0;
  std::vector<std::pair<double, double>> points;
  for (const auto& row : rep.rows) {
    if (row.n < 2) continue;
    const double x = std::pow(std::log(static_cast<double>(row.n)), -1.0 / 16.0);
    points.emplace_back(x, row.gap_to_limit);
    sxx += x * x;
    sxy += x * row.gap_to_limit;
  }
  if (!points.empty()) {
    const double c2 = sxy / sxx;
    double ss = 0.0;
    for (const auto& [x, g] : points) ss += (g - c2 * x) * (g - c2 * x);
    rep.c2_fit = c2;
    rep.fit_residual = std::sqrt(ss / static_cast<double>(points.size()));
  }
  return rep;
}

void write_study_csv(std::ostream& out, std::span<const StudyRow> rows) {
  out << "n,normalized_l1,std_error,gap_to_limit\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", r.n, r.normalized_l1, r.std_error,
                  r.gap_to_limit);
    out << buf;
  }
}

double upper_bound_reference(std::size_t n, double c) {
  const double nd = static_cast<double>(n);
  return 1.0 - c * std::log(nd) / nd;
}

}  // namespace lacsum
