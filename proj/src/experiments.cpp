#include "privgraph/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "privgraph/cut_release.hpp"
#include "privgraph/dp.hpp"
#include "privgraph/errors.hpp"
#include "privgraph/laplacian.hpp"
#include "privgraph/oracles.hpp"
#include "privgraph/spectral_release.hpp"

namespace privgraph {

using nlohmann::ordered_json;

double draw_weight(const weight_law& law, rng& r) {
  switch (law.kind) {
    case weight_law_kind::constant:
      return law.value;
    case weight_law_kind::uniform:
      return law.value * r.uniform01();
    case weight_law_kind::heavy:
      return (r.bernoulli(law.heavy_p) ? law.value : 0.0) + r.uniform01();
  }
  throw internal_error("draw_weight: unknown law");
}

namespace {

void assign_weights(graph& g, const std::vector<edge_id>& slots,
                    const weight_law& law, rng& r) {
  std::vector<edge_id> ordered = slots;
  std::sort(ordered.begin(), ordered.end());
  for (edge_id e : ordered) g.set_weight_by_id(e, draw_weight(law, r));
}

}  // namespace

graph random_gnm_graph(int n, int64_t m, const weight_law& law, rng& r) {
  const int64_t slots = slot_count(n);
  if (m < 0 || m > slots) {
    throw std::invalid_argument("random_gnm_graph: m must lie in [0, N]");
  }
  std::vector<edge_id> ids(static_cast<size_t>(slots));
  for (int64_t i = 0; i < slots; ++i) ids[static_cast<size_t>(i)] = i;
  for (int64_t i = 0; i < m; ++i) {
    const int64_t j = i + r.uniform_below(slots - i);
    std::swap(ids[static_cast<size_t>(i)], ids[static_cast<size_t>(j)]);
  }
  ids.resize(static_cast<size_t>(m));

  graph g(n);
  assign_weights(g, ids, law, r);
  return g;
}

graph random_degree_capped_graph(int n, int cap, const weight_law& law,
                                 rng& r) {
  if (cap < 1 || cap > n - 1) {
    throw std::invalid_argument(
        "random_degree_capped_graph: cap must lie in [1, n-1]");
  }
  const int64_t slots = slot_count(n);
  const int64_t target = static_cast<int64_t>(n) * cap / 2;
  std::vector<int> degree(static_cast<size_t>(n), 0);
  std::vector<bool> used(static_cast<size_t>(slots), false);
  std::vector<edge_id> chosen;
  chosen.reserve(static_cast<size_t>(target));

  int64_t proposals = 0;
  const int64_t proposal_budget = std::max<int64_t>(1000, 50 * slots);
  while (static_cast<int64_t>(chosen.size()) < target &&
         proposals < proposal_budget) {
    ++proposals;
    const edge_id e = r.uniform_below(slots);
    if (used[static_cast<size_t>(e)]) continue;
    const auto [u, v] = edge_endpoints(e, n);
    if (degree[static_cast<size_t>(u)] >= cap ||
        degree[static_cast<size_t>(v)] >= cap) {
      continue;
    }
    used[static_cast<size_t>(e)] = true;
    ++degree[static_cast<size_t>(u)];
    ++degree[static_cast<size_t>(v)];
    chosen.push_back(e);
  }

  graph g(n);
  assign_weights(g, chosen, law, r);
  return g;
}

graph random_connected_graph(int n, int64_t m, const weight_law& law, rng& r) {
  const int64_t slots = slot_count(n);
  if (m < n - 1 || m > slots) {
    throw std::invalid_argument(
        "random_connected_graph: m must lie in [n-1, N]");
  }
  std::vector<bool> used(static_cast<size_t>(slots), false);
  std::vector<edge_id> chosen;
  chosen.reserve(static_cast<size_t>(m));
  for (int v = 1; v < n; ++v) {
    const int u = static_cast<int>(r.uniform_below(v));
    const edge_id e = edge_index(u, v, n);
    used[static_cast<size_t>(e)] = true;
    chosen.push_back(e);
  }
  while (static_cast<int64_t>(chosen.size()) < m) {
    const edge_id e = r.uniform_below(slots);
    if (used[static_cast<size_t>(e)]) continue;
    used[static_cast<size_t>(e)] = true;
    chosen.push_back(e);
  }

  graph g(n);
  assign_weights(g, chosen, law, r);
  return g;
}

namespace {

weight_law law_from_json(const ordered_json& j) {
  weight_law law;
  const std::string kind = j.value("kind", "constant");
  if (kind == "constant") {
    law.kind = weight_law_kind::constant;
  } else if (kind == "uniform") {
    law.kind = weight_law_kind::uniform;
  } else if (kind == "heavy") {
    law.kind = weight_law_kind::heavy;
  } else {
    throw config_error("unknown weight law '" + kind + "'");
  }
  law.value = j.value("value", 1.0);
  law.heavy_p = j.value("heavy_p", 0.5);
  if (law.value < 0.0 || !(law.heavy_p >= 0.0 && law.heavy_p <= 1.0)) {
    throw config_error("weight law parameters out of range");
  }
  return law;
}

ordered_json law_to_json(const weight_law& law) {
  ordered_json j;
  switch (law.kind) {
    case weight_law_kind::constant: j["kind"] = "constant"; break;
    case weight_law_kind::uniform: j["kind"] = "uniform"; break;
    case weight_law_kind::heavy: j["kind"] = "heavy"; break;
  }
  j["value"] = law.value;
  if (law.kind == weight_law_kind::heavy) j["heavy_p"] = law.heavy_p;
  return j;
}

graph generate(const experiment_config& c, rng& r) {
  if (c.family == "gnm") return random_gnm_graph(c.n, c.m, c.law, r);
  if (c.family == "degree_capped") {
    return random_degree_capped_graph(c.n, c.degree_cap, c.law, r);
  }
  if (c.family == "connected") {
    return random_connected_graph(c.n, c.m, c.law, r);
  }
  throw config_error("unknown generator family '" + c.family + "'");
}

double max_per_slot_error(const graph& input, const graph& released) {
  std::map<edge_id, double> gap = input.stored();
  for (const auto& [e, w] : released.stored()) gap[e] -= w;
  double worst = 0.0;
  for (const auto& [e, w] : gap) {
    (void)e;
    worst = std::max(worst, std::fabs(w));
  }
  return worst;
}

graph naive_laplace_release(const graph& g, double epsilon, rng& r) {
  graph out(g.n());
  const double scale = 1.0 / epsilon;
  for (edge_id e = 0; e < g.slots(); ++e) {
    out.set_weight_signed_by_id(e, g.weight_by_id(e) + laplace_noise(scale, r));
  }
  return out;
}

std::map<std::string, double> run_trial(const experiment_config& c,
                                        int64_t trial) {
  const uint64_t trial_seed = derive_seed(c.seed, static_cast<uint64_t>(trial));
  rng generator_rng(derive_seed(trial_seed, 0));
  const graph input = generate(c, generator_rng);

  std::map<std::string, double> metrics;
  metrics["input_edges"] = static_cast<double>(input.positive_count());
  metrics["input_max_degree"] =
      static_cast<double>(input.max_unweighted_degree());

  mirror_descent_config md;
  md.iterations = c.md_iters;

  if (c.mechanism == "spectral") {
    const double beta = c.beta == 0.0 ? 0.25 : c.beta;
    const spectral_release_result rel =
        spectral_release(input, c.epsilon, beta, derive_seed(trial_seed, 1));
    rng power_rng(derive_seed(trial_seed, 2));
    try {
      metrics["spectral_error"] =
          spectral_norm_diff(input, rel.synthetic, power_rng);
    } catch (const convergence_error& e) {
      // Nearly tied extreme eigenvalues can stall the iteration between
      // them; the carried estimate is then tighter than this metric needs.
      metrics["spectral_error"] = e.best_estimate;
    }
    metrics["per_edge_max_error"] = max_per_slot_error(input, rel.synthetic);
    metrics["released_max_degree"] =
        static_cast<double>(rel.synthetic.max_unweighted_degree());
    metrics["m_hat"] = static_cast<double>(rel.m_hat);
    return metrics;
  }

  if (c.mechanism == "cut" || c.mechanism == "cut_vs_naive") {
    const cut_release_result rel =
        cut_release(input, c.epsilon, c.delta, c.beta,
                    derive_seed(trial_seed, 1), md);
    metrics["m_hat"] = static_cast<double>(rel.m_hat);
    metrics["residual_max_weight"] = rel.residual_max_weight;
    metrics["heavy_slots"] = static_cast<double>(rel.heavy_part.stored().size());
    metrics["light_slots"] = static_cast<double>(rel.light_part.stored().size());
    if (c.n <= 13) {
      metrics["max_cut_error"] =
          brute_force_max_cut_error(input, rel.synthetic).error;
    }
    if (c.mechanism == "cut_vs_naive") {
      rng naive_rng(derive_seed(trial_seed, 3));
      const graph naive = naive_laplace_release(input, c.epsilon, naive_rng);
      if (c.n <= 13) {
        metrics["naive_max_cut_error"] =
            brute_force_max_cut_error(input, naive).error;
      }
    }
    return metrics;
  }

  throw config_error("unknown mechanism '" + c.mechanism + "'");
}

double quantile(const std::vector<double>& sorted, double p) {
  // Linear interpolation between closest ranks on the sorted sample.
  const size_t k = sorted.size();
  if (k == 1) return sorted[0];
  const double pos = p * static_cast<double>(k - 1);
  const size_t lo = static_cast<size_t>(pos);
  const size_t hi = std::min(lo + 1, k - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

experiment_config parse_experiment_config(const ordered_json& j) {
  experiment_config c;
  c.name = j.value("name", std::string("experiment"));
  c.mechanism = j.value("mechanism", std::string("spectral"));
  c.family = j.value("family", std::string("gnm"));
  c.n = j.value("n", 0);
  c.m = j.value("m", static_cast<int64_t>(0));
  c.degree_cap = j.value("degree_cap", 0);
  if (j.contains("weight_law")) c.law = law_from_json(j.at("weight_law"));
  c.epsilon = j.value("epsilon", 1.0);
  c.delta = j.value("delta", 1e-6);
  c.beta = j.value("beta", 0.0);
  c.trials = j.value("trials", static_cast<int64_t>(1));
  c.seed = j.value("seed", static_cast<uint64_t>(0));
  c.md_iters = j.value("md_iters", static_cast<int64_t>(0));
  c.threads = j.value("threads", 1);
  c.include_timings = j.value("include_timings", false);

  if (j.contains("thresholds")) {
    for (const auto& t : j.at("thresholds")) {
      threshold_spec spec;
      spec.metric = t.at("metric").get<std::string>();
      spec.stat = t.value("stat", std::string("median"));
      spec.arg = t.value("arg", 0.0);
      if (t.contains("at_most")) spec.at_most = t.at("at_most").get<double>();
      if (t.contains("at_least")) {
        spec.at_least = t.at("at_least").get<double>();
      }
      c.thresholds.push_back(std::move(spec));
    }
  }

  if (c.n < 1) throw config_error("experiment config: n must be >= 1");
  if (c.trials < 1) throw config_error("experiment config: trials must be >= 1");
  if (c.threads < 1) throw config_error("experiment config: threads must be >= 1");
  return c;
}

experiment_config load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config '" + path + "'");
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw config_error("invalid JSON in '" + path + "': " + e.what());
  }
  return parse_experiment_config(j);
}

experiment_report run_experiment(const experiment_config& config) {
  const auto start = std::chrono::steady_clock::now();

  std::vector<std::map<std::string, double>> per_trial(
      static_cast<size_t>(config.trials));
  std::atomic<int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (;;) {
      const int64_t t = next.fetch_add(1);
      if (t >= config.trials) return;
      try {
        per_trial[static_cast<size_t>(t)] = run_trial(config, t);
      } catch (...) {
        std::lock_guard<std::mutex> hold(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int workers =
      static_cast<int>(std::min<int64_t>(config.threads, config.trials));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  experiment_report report;

  // Collect values per metric in trial order.
  std::map<std::string, std::vector<double>> by_metric;
  for (const auto& metrics : per_trial) {
    for (const auto& [k, v] : metrics) by_metric[k].push_back(v);
  }
  for (auto& [metric, values] : by_metric) {
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    double mean = 0.0;
    for (double v : sorted) mean += v;
    mean /= static_cast<double>(sorted.size());
    auto& s = report.summary[metric];
    s["mean"] = mean;
    s["min"] = sorted.front();
    s["max"] = sorted.back();
    s["q25"] = quantile(sorted, 0.25);
    s["median"] = quantile(sorted, 0.5);
    s["q75"] = quantile(sorted, 0.75);
  }

  ordered_json doc;
  doc["schema_version"] = 1;
  doc["name"] = config.name;

  ordered_json cfg;
  cfg["mechanism"] = config.mechanism;
  cfg["family"] = config.family;
  cfg["n"] = config.n;
  if (config.family == "degree_capped") {
    cfg["degree_cap"] = config.degree_cap;
  } else {
    cfg["m"] = config.m;
  }
  cfg["weight_law"] = law_to_json(config.law);
  cfg["epsilon"] = config.epsilon;
  if (config.mechanism != "spectral") cfg["delta"] = config.delta;
  cfg["beta"] = config.beta;
  cfg["trials"] = config.trials;
  cfg["seed"] = config.seed;
  cfg["md_iters"] = config.md_iters;
  doc["config"] = cfg;

  ordered_json trials = ordered_json::array();
  for (int64_t t = 0; t < config.trials; ++t) {
    ordered_json row;
    row["trial"] = t;
    row["seed"] = derive_seed(config.seed, static_cast<uint64_t>(t));
    for (const auto& [k, v] : per_trial[static_cast<size_t>(t)]) row[k] = v;
    trials.push_back(std::move(row));
  }
  doc["trials"] = std::move(trials);

  ordered_json summary;
  for (const auto& [metric, stats] : report.summary) {
    ordered_json s;
    for (const auto& [stat, value] : stats) s[stat] = value;
    summary[metric] = std::move(s);
  }
  doc["summary"] = std::move(summary);

  ordered_json checks = ordered_json::array();
  for (const auto& spec : config.thresholds) {
    const auto it = by_metric.find(spec.metric);
    if (it == by_metric.end()) {
      throw config_error("threshold references unknown metric '" +
                         spec.metric + "'");
    }
    double value;
    if (spec.stat == "frac_le") {
      int64_t hits = 0;
      for (double v : it->second) {
        if (v <= spec.arg) ++hits;
      }
      value = static_cast<double>(hits) /
              static_cast<double>(it->second.size());
    } else {
      const auto& stats = report.summary.at(spec.metric);
      const auto st = stats.find(spec.stat);
      if (st == stats.end()) {
        throw config_error("unknown stat '" + spec.stat + "'");
      }
      value = st->second;
    }
    bool pass = true;
    if (spec.at_most && value > *spec.at_most) pass = false;
    if (spec.at_least && value < *spec.at_least) pass = false;
    report.all_passed = report.all_passed && pass;

    ordered_json c;
    c["metric"] = spec.metric;
    c["stat"] = spec.stat;
    if (spec.stat == "frac_le") c["arg"] = spec.arg;
    c["value"] = value;
    if (spec.at_most) c["at_most"] = *spec.at_most;
    if (spec.at_least) c["at_least"] = *spec.at_least;
    c["pass"] = pass;
    checks.push_back(std::move(c));
  }
  doc["checks"] = std::move(checks);
  doc["all_passed"] = report.all_passed;

  if (config.include_timings) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    doc["wall_time_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  }

  report.document = std::move(doc);
  return report;
}

void save_report(const experiment_report& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_report: cannot open '" + path + "'");
  out << report.document.dump(2) << "\n";
  if (!out) {
    throw std::runtime_error("save_report: write failed for '" + path + "'");
  }
}

}  // namespace privgraph
