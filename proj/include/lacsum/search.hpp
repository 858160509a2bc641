#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lacsum/frequency_set.hpp"
#include "lacsum/monte_carlo.hpp"
#include "lacsum/quadrature.hpp"

namespace lacsum {

enum class SearchMethod { exhaustive, anneal };

std::string_view to_string(SearchMethod m);

// Best normalized L1 norm found among n-element frequency sets.
struct SearchResult {
  std::size_t n = 0;
  FrequencySet best_set{1};
  double best_value = 0.0;
  SearchMethod method = SearchMethod::exhaustive;
  std::uint64_t evaluations = 0;
  std::optional<std::uint64_t> seed;
  // Difference between the fine evaluation and one at twice the density.
  double value_error = 0.0;
};

struct SearchConfig {
  // Screening accuracy during the search.
  QuadratureConfig coarse{.points_per_period = 8};
  // Re-evaluation accuracy for the top candidates.
  QuadratureConfig fine{.points_per_period = 64};
  std::size_t top_k = 10;
  // Guard on the number of canonical candidates enumerated.
  std::uint64_t max_candidates = 2'000'000;
  unsigned workers = 0;
};

// Shift so the minimum is 1, then divide the offsets by their gcd. The L1
// norm is invariant under both moves.
FrequencySet canonicalize(const FrequencySet& fs);
bool is_canonical(const FrequencySet& fs);

// Enumerates every canonical set with entries <= max_freq. Ties (within
// 1e-12 relative) go to the lexicographically smallest set. Throws
// SearchSpaceTooLarge past cfg.max_candidates.
SearchResult exhaustive_sigma(std::size_t n, std::uint64_t max_freq, const SearchConfig& cfg = {});

// Simulated annealing over canonical sets; reproducible for a given seed.
SearchResult anneal_sigma(std::size_t n, std::uint64_t max_freq, std::uint64_t budget,
                          std::uint64_t seed, const SearchConfig& cfg = {});

struct StudyRow {
  std::size_t n = 0;
  double normalized_l1 = 0.0;
  double std_error = 0.0;
  // sqrt(pi)/2 - normalized_l1.
  double gap_to_limit = 0.0;
};

struct StudyReport {
  std::uint64_t q = 0;
  std::vector<StudyRow> rows;
  double limit = 0.0;
  // Literal supremum over the computed n, and the value at the largest n.
  double sup_value = 0.0;
  std::size_t sup_n = 0;
  double trend_value = 0.0;
  std::size_t trend_n = 0;
  // Least-squares c2 in gap ~ c2 (log n)^{-1/16} over rows with n >= 2, and
  // the RMS residual. Diagnostic only.
  std::optional<double> c2_fit;
  std::optional<double> fit_residual;
};

// Monte Carlo normalized L1 of {q, ..., q^n} for each n in n_list.
StudyReport convergence_study(std::uint64_t q, std::span<const std::size_t> n_list,
                              const McConfig& mc);

// Columns: n, normalized_l1, std_error, gap_to_limit.
void write_study_csv(std::ostream& out, std::span<const StudyRow> rows);

// 1 - c log(n) / n, shape of the known upper bound for a caller-chosen c.
double upper_bound_reference(std::size_t n, double c);

}  // namespace lacsum
