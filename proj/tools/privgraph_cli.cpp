// Command-line front end: private graph releases, random-walk analytics,
// raw sampler access, experiment batches, and brute-force oracles.
//
// Exit codes: 0 success (and all thresholds passed), 1 a threshold check
// failed, 2 usage or input error.

#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "privgraph/analytics.hpp"
#include "privgraph/cut_release.hpp"
#include "privgraph/dp.hpp"
#include "privgraph/errors.hpp"
#include "privgraph/experiments.hpp"
#include "privgraph/graph.hpp"
#include "privgraph/graph_io.hpp"
#include "privgraph/oracles.hpp"
#include "privgraph/spectral_release.hpp"

namespace {

using nlohmann::ordered_json;
using namespace privgraph;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  const auto d = std::chrono::steady_clock::now() - start;
  return std::chrono::duration<double, std::milli>(d).count();
}

ordered_json ledger_json(const budget_ledger& ledger) {
  ordered_json entries = ordered_json::array();
  for (const auto& [label, b] : ledger.entries()) {
    ordered_json e;
    e["label"] = label;
    e["epsilon"] = b.epsilon;
    e["delta"] = b.delta;
    entries.push_back(std::move(e));
  }
  return entries;
}

void write_json(const ordered_json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "'");
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct csv_file {
  explicit csv_file(const std::string& path) : out(path) {
    if (!out) throw std::runtime_error("cannot open '" + path + "'");
  }
  ~csv_file() = default;
  std::ofstream out;
};

int run_spectral(const std::string& input, double epsilon, double beta,
                 uint64_t seed, const std::string& output,
                 const std::string& meta_path) {
  const auto start = std::chrono::steady_clock::now();
  const graph g = load_graph(input);
  budget_ledger ledger;
  const spectral_release_result rel =
      spectral_release(g, epsilon, beta, seed, &ledger);
  save_graph(rel.synthetic, output);

  if (!meta_path.empty()) {
    ordered_json meta;
    meta["n"] = g.n();
    meta["m"] = rel.true_edge_count;
    meta["m_hat"] = rel.m_hat;
    meta["epsilon"] = epsilon;
    meta["beta"] = beta;
    meta["seed"] = seed;
    meta["budget"] = {{"epsilon", rel.budget.epsilon},
                      {"delta", rel.budget.delta}};
    meta["ledger"] = ledger_json(ledger);
    meta["wall_time_ms"] = elapsed_ms(start);
    write_json(meta, meta_path);
  }
  return 0;
}

int run_cut(const std::string& input, double epsilon, double delta,
            double beta, uint64_t seed, const mirror_descent_config& md,
            const std::string& output, const std::string& meta_path) {
  const auto start = std::chrono::steady_clock::now();
  const graph g = load_graph(input);
  budget_ledger ledger;
  const cut_release_result rel =
      cut_release(g, epsilon, delta, beta, seed, md, &ledger);
  save_graph(rel.synthetic, output);

  if (!meta_path.empty()) {
    ordered_json meta;
    meta["n"] = g.n();
    meta["m"] = rel.true_edge_count;
    meta["m_hat"] = rel.m_hat;
    meta["epsilon"] = epsilon;
    meta["delta"] = delta;
    meta["beta"] = rel.beta;
    meta["seed"] = seed;
    meta["budget"] = {{"epsilon", rel.budget.epsilon},
                      {"delta", rel.budget.delta}};
    meta["ledger"] = ledger_json(ledger);
    meta["heavy_slots"] = rel.heavy_part.stored().size();
    meta["light_slots"] = rel.light_part.stored().size();
    meta["residual_max_weight"] = rel.residual_max_weight;
    ordered_json mdj;
    mdj["iterations"] = rel.md.iterations;
    mdj["eta"] = rel.md.eta;
    mdj["mass_fraction"] = rel.md.mass_fraction;
    mdj["mass_epsilon"] = rel.md.mass_epsilon;
    mdj["mass_scale"] = rel.md.mass_scale;
    mdj["round_epsilon"] = rel.md.round_epsilon;
    mdj["round_scale"] = rel.md.round_scale;
    mdj["noise_floor"] = rel.md.noise_floor;
    meta["mirror_descent"] = std::move(mdj);
    if (g.n() <= 10) meta["light_part_max_cut_error"] = rel.md_max_cut_error;
    meta["wall_time_ms"] = elapsed_ms(start);
    write_json(meta, meta_path);
  }
  return 0;
}

int run_analytics(const std::string& input, const std::string& stat,
                  bool use_private, double epsilon, double beta,
                  uint64_t seed, const std::string& output) {
  const graph g = load_graph(input);
  const int n = g.n();
  csv_file csv(output);

  if (stat == "resistance") {
    Eigen::MatrixXd r;
    if (use_private) {
      // Post-processing of one private release: release each stage at
      // epsilon/4 (total epsilon), repair connectivity, read resistances.
      const spectral_release_result rel =
          spectral_release(g, epsilon / 4.0, beta, derive_seed(seed, 0));
      graph released = rel.synthetic;
      if (!is_connected(released)) {
        released = graph_sum(released, complete_graph(n, 1.0 / n));
      }
      r = all_pairs_resistance(released);
    } else {
      r = all_pairs_resistance(g);
    }
    csv.out << "u,v,value\n";
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        csv.out << u << "," << v << "," << fmt17(r(u, v)) << "\n";
      }
    }
    return 0;
  }

  if (stat == "commute" || stat == "cover") {
    std::vector<double> commute;
    if (use_private) {
      commute = private_commute_times(g, epsilon, beta, seed).estimates;
    } else {
      commute = commute_times_exact(g);
    }
    if (stat == "commute") {
      csv.out << "u,v,value\n";
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          csv.out << u << "," << v << ","
                  << fmt17(commute[static_cast<size_t>(edge_index(u, v, n))])
                  << "\n";
        }
      }
    } else {
      const cover_time_bounds_result b = cover_time_bounds(commute, n);
      csv.out << "bound,value\n";
      csv.out << "lower," << fmt17(b.lower) << "\n";
      csv.out << "upper," << fmt17(b.upper) << "\n";
    }
    return 0;
  }

  if (stat == "hitting") {
    csv.out << "t,u,value\n";
    if (use_private) {
      const private_hitting_result res =
          private_hitting_times(g, epsilon, beta, seed);
      for (const auto& hv : res.vectors) {
        for (int u = 0; u < n; ++u) {
          csv.out << hv.target << "," << u << ","
                  << fmt17(hv.values[static_cast<size_t>(u)]) << "\n";
        }
      }
    } else {
      for (int t = 0; t < n; ++t) {
        const hitting_vector hv = hitting_times_exact(g, t);
        for (int u = 0; u < n; ++u) {
          csv.out << t << "," << u << ","
                  << fmt17(hv.values[static_cast<size_t>(u)]) << "\n";
        }
      }
    }
    return 0;
  }

  throw config_error("unknown stat '" + stat + "'");
}

int run_sample(const std::string& input, double epsilon, int64_t k,
               uint64_t seed, const std::string& output) {
  const graph g = load_graph(input);
  rng r(seed);
  const std::vector<edge_id> slots = topology_sample(g, k, epsilon, r);
  std::ofstream out(output);
  if (!out) throw std::runtime_error("cannot open '" + output + "'");
  out << "# raw topology sample (input weights, not a private release)\n";
  out << "n " << g.n() << "\n";
  for (edge_id e : slots) {
    const auto [u, v] = edge_endpoints(e, g.n());
    out << u << " " << v << " " << fmt17(g.weight_by_id(e)) << "\n";
  }
  return 0;
}

int run_eval(const std::string& config_path, const std::string& output,
             std::optional<uint64_t> seed_override,
             std::optional<int> threads_override) {
  experiment_config config = load_experiment_config(config_path);
  if (seed_override) config.seed = *seed_override;
  if (threads_override) config.threads = *threads_override;
  const experiment_report report = run_experiment(config);
  if (!output.empty()) {
    save_report(report, output);
  } else {
    std::cout << report.document.dump(2) << "\n";
  }
  return report.all_passed ? 0 : 1;
}

int run_oracle(const std::string& path_a, const std::string& path_b,
               const std::string& output) {
  const graph a = load_graph(path_a);
  const graph b = load_graph(path_b);
  const max_cut_error_result res = brute_force_max_cut_error(a, b);
  ordered_json j;
  j["max_cut_error"] = res.error;
  j["witness_s"] = res.witness.s;
  j["witness_t"] = res.witness.t;
  if (output.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json(j, output);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "privgraph: differentially private synthetic graph releases and "
      "random-walk analytics"};
  app.require_subcommand(1);

  uint64_t global_seed = 0;
  int global_threads = 1;
  std::string global_config;
  app.add_option("--seed", global_seed, "Root RNG seed (default 0)");
  app.add_option("--threads", global_threads, "Worker threads for eval");
  app.add_option("--config", global_config, "Experiment config for eval");

  // spectral
  auto* sp = app.add_subcommand("spectral", "Non-negative synthetic release");
  std::string sp_input, sp_output, sp_meta;
  double sp_epsilon = 0, sp_beta = 0.25;
  std::optional<uint64_t> sp_seed;
  sp->add_option("--input", sp_input, "Input edge list")->required();
  sp->add_option("--epsilon", sp_epsilon, "Per-stage budget")->required();
  sp->add_option("--beta", sp_beta, "Count-overshoot failure rate")
      ->capture_default_str();
  sp->add_option("--seed", sp_seed, "RNG seed (overrides global)");
  sp->add_option("--output", sp_output, "Released edge list")->required();
  sp->add_option("--meta", sp_meta, "Release metadata JSON");

  // cut
  auto* cu = app.add_subcommand("cut", "Cut-tuned synthetic release");
  std::string cu_input, cu_output, cu_meta;
  double cu_epsilon = 0, cu_delta = 0, cu_beta = 0.0;
  std::optional<uint64_t> cu_seed;
  mirror_descent_config cu_md;
  cu->add_option("--input", cu_input, "Input edge list")->required();
  cu->add_option("--epsilon", cu_epsilon, "Per-stage budget")->required();
  cu->add_option("--delta", cu_delta, "Approximation parameter")->required();
  cu->add_option("--beta", cu_beta,
                 "Count-overshoot failure rate (0 = 1/(ln n)^0.25 capped)");
  cu->add_option("--seed", cu_seed, "RNG seed (overrides global)");
  cu->add_option("--md-iters", cu_md.iterations,
                 "Synthesizer rounds (0 = ceil(n ln n))");
  cu->add_option("--md-eta", cu_md.eta, "Step size (0 = 1/sqrt(rounds))");
  cu->add_option("--md-mass-fraction", cu_md.mass_fraction,
                 "Budget share of the total-weight estimate (0 = 0.5)");
  cu->add_option("--output", cu_output, "Released edge list")->required();
  cu->add_option("--meta", cu_meta, "Release metadata JSON");

  // analytics
  auto* an = app.add_subcommand("analytics", "Random-walk statistics");
  std::string an_input, an_stat, an_output;
  double an_epsilon = 1.0, an_beta = 0.25;
  std::optional<uint64_t> an_seed;
  bool an_private = false, an_exact = false;
  an->add_option("--input", an_input, "Input edge list")->required();
  an->add_option("--stat", an_stat, "resistance|commute|cover|hitting")
      ->required();
  an->add_flag("--private", an_private, "Private estimates");
  an->add_flag("--exact", an_exact, "Exact values (no privacy)");
  an->add_option("--epsilon", an_epsilon, "Total budget for --private");
  an->add_option("--beta", an_beta, "Release failure rate")
      ->capture_default_str();
  an->add_option("--seed", an_seed, "RNG seed (overrides global)");
  an->add_option("--output", an_output, "Output CSV")->required();

  // sample
  auto* sa = app.add_subcommand("sample", "Raw fixed-size topology sample");
  std::string sa_input, sa_output;
  double sa_epsilon = 0;
  int64_t sa_k = 0;
  std::optional<uint64_t> sa_seed;
  sa->add_option("--input", sa_input, "Input edge list")->required();
  sa->add_option("--epsilon", sa_epsilon, "Weight sharpness")->required();
  sa->add_option("--k", sa_k, "Sample size")->required();
  sa->add_option("--seed", sa_seed, "RNG seed (overrides global)");
  sa->add_option("--output", sa_output, "Sampled edge list")->required();

  // eval
  auto* ev = app.add_subcommand("eval", "Run an experiment config");
  std::string ev_config, ev_output;
  std::optional<uint64_t> ev_seed;
  std::optional<int> ev_threads;
  ev->add_option("--config", ev_config, "Experiment config JSON");
  ev->add_option("--output", ev_output, "Report JSON (default: stdout)");
  ev->add_option("--seed", ev_seed, "Override the config seed");
  ev->add_option("--threads", ev_threads, "Override the config threads");

  // oracle
  auto* orc = app.add_subcommand("oracle", "Brute-force max cut error");
  std::string or_a, or_b, or_output;
  orc->add_option("--a", or_a, "First edge list")->required();
  orc->add_option("--b", or_b, "Second edge list")->required();
  orc->add_option("--output", or_output, "Result JSON (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sp->parsed()) {
      return run_spectral(sp_input, sp_epsilon, sp_beta,
                          sp_seed.value_or(global_seed), sp_output, sp_meta);
    }
    if (cu->parsed()) {
      return run_cut(cu_input, cu_epsilon, cu_delta, cu_beta,
                     cu_seed.value_or(global_seed), cu_md, cu_output, cu_meta);
    }
    if (an->parsed()) {
      if (an_private == an_exact) {
        std::cerr << "analytics: pass exactly one of --private / --exact\n";
        return 2;
      }
      return run_analytics(an_input, an_stat, an_private, an_epsilon, an_beta,
                           an_seed.value_or(global_seed), an_output);
    }
    if (sa->parsed()) {
      return run_sample(sa_input, sa_epsilon, sa_k,
                        sa_seed.value_or(global_seed), sa_output);
    }
    if (ev->parsed()) {
      const std::string cfg = ev_config.empty() ? global_config : ev_config;
      if (cfg.empty()) {
        std::cerr << "eval: --config is required\n";
        return 2;
      }
      std::optional<uint64_t> seed = ev_seed;
      std::optional<int> threads = ev_threads;
      if (!threads && global_threads != 1) threads = global_threads;
      return run_eval(cfg, ev_output, seed, threads);
    }
    if (orc->parsed()) {
      return run_oracle(or_a, or_b, or_output);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
