#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "privgraph/graph.hpp"
#include "privgraph/rng.hpp"

namespace privgraph {

// How edge weights are drawn once a topology is fixed.
//   constant: every edge gets `value`
//   uniform:  U[0, value)
//   heavy:    value * Bernoulli(heavy_p) + U[0, 1)  (a few big spikes on a
//             light background)
enum class weight_law_kind { constant, uniform, heavy };

struct weight_law {
  weight_law_kind kind = weight_law_kind::constant;
  double value = 1.0;
  double heavy_p = 0.5;
};

double draw_weight(const weight_law& law, rng& r);

// Uniform random topology with exactly m distinct pairs.
graph random_gnm_graph(int n, int64_t m, const weight_law& law, rng& r);

// Bounded-degree random topology: proposals are uniform random pairs,
// accepted while both endpoints stay below the cap, aiming for
// floor(n * cap / 2) edges. Proposal budget is bounded, so the result can
// fall slightly short of the target on tight caps.
graph random_degree_capped_graph(int n, int cap, const weight_law& law,
                                 rng& r);

// Connected topology with exactly m >= n-1 pairs: a random attachment tree
// plus uniformly chosen extra pairs.
graph random_connected_graph(int n, int64_t m, const weight_law& law, rng& r);

// One pass/fail check evaluated against the per-trial metric summaries.
// stat is one of: mean, median, min, max, q25, q75, frac_le (the fraction of
// trials with metric <= arg). The check passes when the stat value is within
// [at_least, at_most] (absent bounds don't constrain).
struct threshold_spec {
  std::string metric;
  std::string stat;
  double arg = 0.0;
  std::optional<double> at_most;
  std::optional<double> at_least;
};

// A deterministic batch of mechanism runs on freshly generated graphs.
// mechanism: "spectral", "cut", or "cut_vs_naive" (the last one runs the cut
// release and a Laplace-on-every-slot baseline on the same inputs).
// family: "gnm", "degree_capped", or "connected".
struct experiment_config {
  std::string name = "experiment";
  std::string mechanism = "spectral";
  std::string family = "gnm";
  int n = 0;
  int64_t m = 0;        // gnm / connected
  int degree_cap = 0;   // degree_capped
  weight_law law;
  double epsilon = 1.0;
  double delta = 1e-6;  // cut mechanisms only
  double beta = 0.0;    // 0 = mechanism default
  int64_t trials = 1;
  uint64_t seed = 0;
  int64_t md_iters = 0;  // 0 = default schedule
  int threads = 1;
  bool include_timings = false;
  std::vector<threshold_spec> thresholds;
};

experiment_config parse_experiment_config(const nlohmann::ordered_json& j);
experiment_config load_experiment_config(const std::string& path);

struct experiment_report {
  nlohmann::ordered_json document;
  bool all_passed = true;
  // summary[metric][stat], the same numbers embedded in the document
  std::map<std::string, std::map<std::string, double>> summary;
};

// Runs config.trials independent trials. Trial t generates its graph and
// noise from seeds derived from (config.seed, t), so the report document is
// identical across reruns and thread counts as long as timings are excluded
// (include_timings adds wall-clock fields, which naturally vary).
experiment_report run_experiment(const experiment_config& config);

void save_report(const experiment_report& report, const std::string& path);

}  // namespace privgraph
