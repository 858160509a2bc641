#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "json_format.hpp"
#include "lacsum/clt.hpp"
#include "lacsum/errors.hpp"
#include "lacsum/frequency_set.hpp"
#include "run_record.hpp"

namespace {

using nlohmann::json;
using namespace lacsum;

constexpr int kExitUsage = 1;
constexpr int kExitComputation = 2;
constexpr int kExitMismatch = 3;

struct FreqInput {
  std::string list;
  std::string file;
  std::string lacunary;
};

void add_freq_options(CLI::App* sub, FreqInput& in) {
  auto* a = sub->add_option("--freqs", in.list, "Comma-separated frequencies");
  auto* b = sub->add_option("--freqs-file", in.file, "File with one frequency per line");
  auto* c = sub->add_option("--lacunary", in.lacunary, "q,n for {q, ..., q^n}");
  a->excludes(b, c);
  b->excludes(c);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
  return parts;
}

// Accepts plain integers and exact floating forms such as 1e7.
std::uint64_t parse_count(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v >= 1.0) || v != std::floor(v) || v > 1.8e19)
    throw InvalidInput(std::string("bad ") + what + " '" + text + "'");
  if (text.find_first_not_of("0123456789") == std::string::npos) return std::stoull(text);
  return static_cast<std::uint64_t>(v);
}

FrequencySet resolve_freqs(const FreqInput& in) {
  if (!in.list.empty()) return parse_frequency_list(in.list);
  if (!in.file.empty()) {
    std::ifstream f(in.file);
    if (!f) throw InvalidInput("cannot read " + in.file);
    return read_frequency_file(f);
  }
  if (!in.lacunary.empty()) {
    const auto parts = split(in.lacunary, ',');
    if (parts.size() != 2) throw InvalidInput("--lacunary expects q,n");
    return lacunary_set(parse_count(parts[0], "q"), parse_count(parts[1], "n"));
  }
  throw InvalidInput("one of --freqs, --freqs-file or --lacunary is required");
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

json resolve_phi_grid(const std::string& spec) {
  json grid = json::array();
  if (spec == "default") {
    for (const auto& [s, t] : default_phi_grid()) grid.push_back({s, t});
    return grid;
  }
  for (const std::string& point : split(spec, ',')) {
    const auto st = split(point, ':');
    if (st.size() != 2) throw InvalidInput("--phi-grid expects 'default' or s:t,s:t,...");
    try {
      grid.push_back({std::stod(st[0]), std::stod(st[1])});
    } catch (const std::exception&) {
      throw InvalidInput("bad grid point '" + point + "'");
    }
  }
  return grid;
}

int replay(const std::string& run_dir) {
  const json record = cli::read_run_record(run_dir);
  const std::string command = record.at("command").get<std::string>();
  const json payload = cli::execute(command, record.at("config"), false);
  const bool match = cli::dump_json(payload, -1) == cli::dump_json(record.at("payload"), -1);
  json out{{"schema", 1},
           {"command", "replay"},
           {"run_dir", run_dir},
           {"replayed_command", command},
           {"match", match}};
  std::cout << cli::dump_json(out) << '\n';
  if (!match) {
    std::cerr << "replay mismatch for " << run_dir << '\n';
    return kExitMismatch;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lacunary trigonometric sums: norms, energies, CLT audit and searches"};
  app.require_subcommand(1);
  // Subcommands hand unknown flags up, so --no-record works in either place.
  app.fallthrough();

  std::string runs_dir = "runs";
  bool no_record = false;
  app.add_option("--runs-dir", runs_dir, "Where run records are written");
  app.add_flag("--no-record", no_record, "Do not write a run record");

  FreqInput freq_in;
  std::string samples_text = "1000000";
  std::uint64_t seed = 0;
  std::uint64_t chunk_size = std::uint64_t{1} << 16;

  auto* eval = app.add_subcommand("eval", "Evaluate S(theta)");
  double theta = 0.0;
  add_freq_options(eval, freq_in);
  eval->add_option("--theta", theta)->required();

  auto* norms = app.add_subcommand("norms", "L^p norms of S");
  int p = 1;
  std::string method = "auto";
  double tol = 0.0;
  bool antithetic = false, moments = false, json_flag = false;
  std::uint64_t ppp = 32;
  add_freq_options(norms, freq_in);
  norms->add_option("--p", p)->check(CLI::IsMember({1, 2, 4}));
  norms->add_option("--method", method)->check(CLI::IsMember({"auto", "quad", "mc"}));
  norms->add_option("--samples", samples_text);
  auto* norms_seed = norms->add_option("--seed", seed);
  auto* norms_tol = norms->add_option("--tol", tol, "Target std error for --method auto, p = 1");
  norms->add_option("--chunk-size", chunk_size);
  norms->add_flag("--antithetic", antithetic);
  norms->add_option("--points-per-period", ppp);
  norms->add_flag("--moments", moments, "Also report the fourth cosine moment and Markov tail");
  norms->add_flag("--json", json_flag, "JSON output (the default)");

  auto* energy = app.add_subcommand("energy", "Additive energy and Holder bound");
  add_freq_options(energy, freq_in);

  auto* sidon = app.add_subcommand("sidon", "Mian-Chowla Sidon set");
  std::size_t sidon_n = 0;
  bool sidon_json = false;
  sidon->add_option("--n", sidon_n)->required();
  sidon->add_flag("--json", sidon_json, "Print the JSON payload instead of a frequency file");

  auto* clt = app.add_subcommand("clt", "Distribution of (mu, nu) and the chain audit");
  std::string phi_grid = "default", report_path, csv_prefix;
  bool chain_audit = false;
  add_freq_options(clt, freq_in);
  clt->add_option("--samples", samples_text);
  auto* clt_seed = clt->add_option("--seed", seed);
  clt->add_option("--chunk-size", chunk_size);
  clt->add_option("--phi-grid", phi_grid, "'default' or s:t,s:t,...");
  clt->add_flag("--chain-audit", chain_audit);
  clt->add_option("--report", report_path, "Write the report JSON here too");
  clt->add_option("--csv", csv_prefix, "Write <prefix>_phi.csv and <prefix>_ecdf.csv");

  auto* search = app.add_subcommand("search", "Search for the largest normalized L1 norm");
  std::size_t search_n = 0;
  std::uint64_t max_freq = 0, budget = 10'000;
  std::string mode = "exhaustive";
  search->add_option("--n", search_n)->required();
  search->add_option("--max-freq", max_freq)->required();
  search->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "anneal"}));
  search->add_option("--budget", budget);
  auto* search_seed = search->add_option("--seed", seed);

  auto* study = app.add_subcommand("study", "Normalized L1 of lacunary sets against n");
  std::uint64_t q = 8;
  std::string n_list_text = "4,8,16", study_csv;
  double upper_bound_c = 0.0;
  study->add_option("--q", q);
  study->add_option("--n-list", n_list_text);
  study->add_option("--samples", samples_text);
  auto* study_seed = study->add_option("--seed", seed);
  study->add_option("--chunk-size", chunk_size);
  study->add_option("--csv", study_csv);
  auto* study_c = study->add_option("--upper-bound-c", upper_bound_c, "Constant for the reference curve");

  auto* replay_cmd = app.add_subcommand("replay", "Rerun a recorded run and compare payloads");
  std::string run_dir;
  replay_cmd->add_option("run_dir", run_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (replay_cmd->parsed()) return replay(run_dir);

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    json config;
    const auto seed_or_fresh = [&](CLI::Option* opt) { return opt->count() ? seed : fresh_seed(); };

    if (command == "eval" || command == "norms" || command == "energy" || command == "clt")
      config["freqs"] = resolve_freqs(freq_in).values();

    if (command == "eval") {
      config["theta"] = theta;
    } else if (command == "norms") {
      config["p"] = p;
      config["method"] = method;
      config["samples"] = parse_count(samples_text, "--samples");
      if (method != "quad" || moments) config["seed"] = seed_or_fresh(norms_seed);
      if (norms_tol->count()) config["tol"] = tol;
      config["chunk_size"] = chunk_size;
      config["antithetic"] = antithetic;
      config["points_per_period"] = ppp;
      config["moments"] = moments;
    } else if (command == "sidon") {
      config["n"] = sidon_n;
    } else if (command == "clt") {
      config["samples"] = parse_count(samples_text, "--samples");
      config["seed"] = seed_or_fresh(clt_seed);
      config["chunk_size"] = chunk_size;
      config["phi_grid"] = resolve_phi_grid(phi_grid);
      config["chain_audit"] = chain_audit;
      if (!report_path.empty()) config["report"] = report_path;
      if (!csv_prefix.empty()) config["csv"] = csv_prefix;
    } else if (command == "search") {
      config["n"] = search_n;
      config["max_freq"] = max_freq;
      config["mode"] = mode;
      if (mode == "anneal") {
        config["budget"] = budget;
        config["seed"] = seed_or_fresh(search_seed);
      }
    } else if (command == "study") {
      config["q"] = q;
      std::vector<std::uint64_t> ns;
      for (const std::string& s : split(n_list_text, ',')) ns.push_back(parse_count(s, "n"));
      config["n_list"] = ns;
      config["samples"] = parse_count(samples_text, "--samples");
      config["seed"] = seed_or_fresh(study_seed);
      config["chunk_size"] = chunk_size;
      if (!study_csv.empty()) config["csv"] = study_csv;
      if (study_c->count()) config["upper_bound_c"] = upper_bound_c;
    }

    json record;
    record["schema"] = 1;
    std::vector<std::string> args(argv, argv + argc);
    record["command_line"] = args;
    record["command"] = command;
    record["config"] = config;
    record["seeds"] = cli::uses_seed(command, config) ? json::array({config.at("seed")}) : json::array();
    record["input_hash"] = cli::git_blob_sha1(cli::dump_json(json{{"command", command}, {"config", config}}, -1));
    record["started"] = cli::utc_timestamp();

    const json payload = cli::execute(command, config);
    record["finished"] = cli::utc_timestamp();
    record["payload"] = payload;

    if (command == "sidon" && !sidon_json)
      write_frequency_file(std::cout, FrequencySet(payload.at("freqs").get<std::vector<std::uint64_t>>()));
    else
      std::cout << cli::dump_json(payload) << '\n';
    if (!no_record) {
      const auto dir = cli::write_run_record(runs_dir, record);
      std::cerr << "recorded " << dir.string() << '\n';
    }
    return 0;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitComputation;
  }
}
