#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>

#include <boost/math/distributions/normal.hpp>

#include "json_format.hpp"
#include "lacsum/clt.hpp"
#include "lacsum/diophantine.hpp"
#include "lacsum/errors.hpp"
#include "lacsum/exponential_sum.hpp"
#include "lacsum/norms.hpp"
#include "lacsum/search.hpp"

namespace lacsum::cli {
namespace {

using nlohmann::json;

FrequencySet freqs_of(const json& cfg) {
  return FrequencySet(cfg.at("freqs").get<std::vector<std::uint64_t>>());
}

McConfig mc_of(const json& cfg) {
  McConfig mc;
  mc.samples = cfg.at("samples").get<std::uint64_t>();
  mc.seed = cfg.value("seed", std::uint64_t{0});
  mc.chunk_size = cfg.value("chunk_size", mc.chunk_size);
  mc.antithetic = cfg.value("antithetic", false);
  return mc;
}

QuadratureConfig quad_of(const json& cfg) {
  QuadratureConfig q;
  q.points_per_period = cfg.value("points_per_period", q.points_per_period);
  return q;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json header(std::string_view command) {
  return json{{"schema", 1}, {"command", command}};
}

json eval_cmd(const json& cfg, bool) {
  const FrequencySet fs = freqs_of(cfg);
  const double theta = cfg.at("theta").get<double>();
  const SumValue v = evaluate_sum(fs, theta);
  const MuNu x = evaluate_mu_nu(fs, theta);
  json out = header("eval");
  out["n"] = fs.size();
  out["theta"] = theta;
  out["re"] = v.re;
  out["im"] = v.im;
  out["modulus"] = sum_modulus(fs, v);
  out["mu"] = x.mu;
  out["nu"] = x.nu;
  return out;
}

json norm_json(const NormEstimate& e) {
  json out = header("norms");
  out["p"] = e.p;
  out["value"] = e.value;
  out["normalized"] = e.normalized;
  out["std_error"] = optional_number(e.std_error);
  out["method"] = to_string(e.method);
  out["n"] = e.n;
  out["seed"] = e.seed ? json(*e.seed) : json(nullptr);
  out["samples"] = e.samples ? json(*e.samples) : json(nullptr);
  return out;
}

json moment_json(const MomentEstimate& m) {
  return json{{"value", m.value}, {"std_error", m.std_error}, {"method", to_string(m.method)}};
}

bool quadrature_fits(const FrequencySet& fs, const QuadratureConfig& q) {
  try {
    panel_count(fs.max(), q);
    return true;
  } catch (const FrequencyTooLarge&) {
    return false;
  }
}

json norms_cmd(const json& cfg, bool) {
  const FrequencySet fs = freqs_of(cfg);
  const int p = cfg.at("p").get<int>();
  const std::string method = cfg.at("method").get<std::string>();
  const QuadratureConfig quad = quad_of(cfg);
  const McConfig mc = mc_of(cfg);

  NormEstimate est;
  if (method == "quad") {
    est = lp_norm_quadrature(fs, p, quad);
  } else if (method == "mc") {
    est = lp_monte_carlo(fs, p, mc);
  } else if (method == "auto") {
    if (p == 1 && cfg.contains("tol") && !cfg["tol"].is_null())
      est = l1_auto(fs, cfg["tol"].get<double>(), mc.seed, quad);
    else
      est = quadrature_fits(fs, quad) ? lp_norm_quadrature(fs, p, quad) : lp_monte_carlo(fs, p, mc);
  } else {
    throw InvalidInput("unknown method '" + method + "'");
  }

  json out = norm_json(est);
  if (cfg.value("moments", false)) {
    MomentEstimate fourth;
    try {
      fourth = fourth_moment_cos(fs, Method::quadrature, quad, mc);
    } catch (const FrequencyTooLarge&) {
      fourth = fourth_moment_cos(fs, Method::monte_carlo, quad, mc);
    }
    json moments;
    moments["fourth_moment_cos"] = moment_json(fourth);
    moments["fourth_moment_bound"] = static_cast<double>(fs.size()) * static_cast<double>(fs.size());
    moments["markov_tail_fraction"] = moment_json(markov_tail_fraction(fs, mc));
    moments["markov_tail_bound"] = 1.0 / static_cast<double>(fs.size());
    out["moments"] = moments;
  }
  return out;
}

json certificate_json(const EnergyCertificate& c) {
  return json{{"n", c.n},
              {"energy", c.energy},
              {"minimum_energy", minimum_energy(c.n)},
              {"is_sidon", c.is_sidon},
              {"l1_lower_bound", c.l1_lower_bound},
              {"normalized_lower_bound", c.normalized_lower_bound}};
}

json energy_cmd(const json& cfg, bool) {
  json out = header("energy");
  out.update(certificate_json(holder_lower_bound(freqs_of(cfg))));
  return out;
}

json sidon_cmd(const json& cfg, bool) {
  const FrequencySet fs = mian_chowla(cfg.at("n").get<std::size_t>());
  json out = header("sidon");
  out["freqs"] = fs.values();
  out["certificate"] = certificate_json(holder_lower_bound(fs));
  return out;
}

json mean_json(const MeanWithError& m) {
  return json{{"value", m.value}, {"std_error", m.std_error}};
}

void write_clt_csv(const std::string& prefix, const CltReport& r) {
  std::ofstream phi(prefix + "_phi.csv");
  std::ofstream ecdf(prefix + "_ecdf.csv");
  if (!phi || !ecdf) throw InvalidInput("cannot write CSV with prefix " + prefix);
  char line[256];
  phi << "s,t,phi_re,phi_im,std_error,gaussian\n";
  for (const CharFnPoint& p : r.phi_grid) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", p.s, p.t,
                  p.phi.real(), p.phi.imag(), p.std_error, p.gaussian);
    phi << line;
  }
  // Quantiles of both marginals next to those of N(0, 1/2).
  const boost::math::normal_distribution<double> target(0.0, std::sqrt(0.5));
  ecdf << "level,mu,nu,normal\n";
  const std::size_t m = r.sorted_mu.size();
  const int levels = 999;
  for (int i = 1; i <= levels; ++i) {
    const double level = static_cast<double>(i) / (levels + 1);
    const std::size_t idx = std::min(m - 1, static_cast<std::size_t>(level * static_cast<double>(m)));
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", level, r.sorted_mu[idx],
                  r.sorted_nu[idx], boost::math::quantile(target, level));
    ecdf << line;
  }
}

json clt_cmd(const json& cfg, bool side_outputs) {
  const FrequencySet fs = freqs_of(cfg);
  const McConfig mc = mc_of(cfg);
  const auto grid = cfg.at("phi_grid").get<std::vector<GridPoint>>();
  const CltReport r = clt_report(fs, mc, grid, cfg.value("chain_audit", false));

  json out = header("clt");
  out["n"] = r.n;
  out["samples"] = r.samples;
  out["seed"] = r.seed;
  out["radial_mean"] = r.radial_mean;
  out["radial_std_error"] = r.radial_std_error;
  out["limit"] = std::sqrt(std::numbers::pi) / 2.0;
  out["ks_mu"] = r.ks_mu;
  out["ks_nu"] = r.ks_nu;
  out["cov_hat"] = r.cov_hat;
  json grid_out = json::array();
  for (const CharFnPoint& p : r.phi_grid) {
    grid_out.push_back({{"s", p.s},
                        {"t", p.t},
                        {"phi_re", p.phi.real()},
                        {"phi_im", p.phi.imag()},
                        {"std_error", p.std_error},
                        {"gaussian", p.gaussian},
                        {"deviation_bound", deviation_bound(p.s, p.t, r.n)}});
  }
  out["phi_grid"] = grid_out;
  if (r.chain_audit) {
    const FinalChainAudit& a = *r.chain_audit;
    json checks = json::array();
    for (const ChainCheck& c : a.checks) {
      checks.push_back({{"name", c.name},
                        {"lhs", c.lhs},
                        {"rhs", c.rhs},
                        {"std_error", c.std_error},
                        {"two_sided", c.two_sided},
                        {"holds", c.holds}});
    }
    out["chain_audit"] = {{"e_abs_x", mean_json(a.e_abs_x)},
                          {"e_abs_xz", mean_json(a.e_abs_xz)},
                          {"e_abs_xz_trunc", mean_json(a.e_abs_xz_trunc)},
                          {"e_abs_yz", mean_json(a.e_abs_yz)},
                          {"e_abs_yz_trunc", mean_json(a.e_abs_yz_trunc)},
                          {"e_abs_z", mean_json(a.e_abs_z)},
                          {"truncation_radius", a.truncation_radius},
                          {"smoothing_variance", a.smoothing_variance},
                          {"checks", checks},
                          {"all_hold", a.all_hold()}};
  } else {
    out["chain_audit"] = nullptr;
  }

  if (side_outputs) {
    if (cfg.contains("report")) {
      const auto path = cfg["report"].get<std::string>();
      std::ofstream file(path);
      if (!file) throw InvalidInput("cannot write " + path);
      file << dump_json(out) << '\n';
    }
    if (cfg.contains("csv")) write_clt_csv(cfg["csv"].get<std::string>(), r);
  }
  return out;
}

SearchMethod search_method(const std::string& mode) {
  if (mode == "exhaustive") return SearchMethod::exhaustive;
  if (mode == "anneal") return SearchMethod::anneal;
  throw InvalidInput("unknown search mode '" + mode + "'");
}

json search_cmd(const json& cfg, bool) {
  const auto n = cfg.at("n").get<std::size_t>();
  const auto max_freq = cfg.at("max_freq").get<std::uint64_t>();
  const SearchResult r =
      search_method(cfg.at("mode").get<std::string>()) == SearchMethod::exhaustive
          ? exhaustive_sigma(n, max_freq)
          : anneal_sigma(n, max_freq, cfg.at("budget").get<std::uint64_t>(),
                         cfg.at("seed").get<std::uint64_t>());
  json out = header("search");
  out["n"] = r.n;
  out["best_set"] = r.best_set.values();
  out["best_value"] = r.best_value;
  out["method"] = to_string(r.method);
  out["evaluations"] = r.evaluations;
  out["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  out["value_error"] = r.value_error;
  out["holder_lower_bound"] = holder_lower_bound(r.best_set).normalized_lower_bound;
  return out;
}

json study_cmd(const json& cfg, bool side_outputs) {
  const auto q = cfg.at("q").get<std::uint64_t>();
  const auto n_list = cfg.at("n_list").get<std::vector<std::size_t>>();
  const StudyReport rep = convergence_study(q, n_list, mc_of(cfg));
  const std::optional<double> c =
      cfg.contains("upper_bound_c") ? std::optional(cfg["upper_bound_c"].get<double>()) : std::nullopt;

  json rows = json::array();
  for (const StudyRow& row : rep.rows) {
    json r{{"n", row.n},
           {"normalized_l1", row.normalized_l1},
           {"std_error", row.std_error},
           {"gap_to_limit", row.gap_to_limit}};
    if (c) r["upper_bound_reference"] = upper_bound_reference(row.n, *c);
    rows.push_back(r);
  }
  json out = header("study");
  out["q"] = rep.q;
  out["samples"] = cfg.at("samples");
  out["seed"] = cfg.at("seed");
  out["rows"] = rows;
  out["limit"] = rep.limit;
  out["sup_value"] = rep.sup_value;
  out["sup_n"] = rep.sup_n;
  out["trend_value"] = rep.trend_value;
  out["trend_n"] = rep.trend_n;
  out["c2_fit"] = optional_number(rep.c2_fit);
  out["fit_residual"] = optional_number(rep.fit_residual);

  if (side_outputs && cfg.contains("csv")) {
    const auto path = cfg["csv"].get<std::string>();
    std::ofstream file(path);
    if (!file) throw InvalidInput("cannot write " + path);
    write_study_csv(file, rep.rows);
  }
  return out;
}

}  // namespace

nlohmann::json execute(std::string_view command, const nlohmann::json& config,
                       bool side_outputs) {
  using Handler = json (*)(const json&, bool);
  static const std::map<std::string_view, Handler> handlers{
      {"eval", eval_cmd},     {"norms", norms_cmd},   {"energy", energy_cmd}, {"sidon", sidon_cmd},
      {"clt", clt_cmd},       {"search", search_cmd}, {"study", study_cmd}};
  const auto it = handlers.find(command);
  if (it == handlers.end()) throw InvalidInput("unknown command '" + std::string(command) + "'");
  try {
    return it->second(config, side_outputs);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad configuration: ") + e.what());
  }
}

bool uses_seed(std::string_view command, const nlohmann::json& config) {
  if (command == "clt" || command == "study") return true;
  if (command == "norms") return config.value("method", "") != "quad" || config.value("moments", false);
  if (command == "search") return config.value("mode", "") == "anneal";
  return false;
}

}  // namespace lacsum::cli
