#include "privgraph/cut_release.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "privgraph/errors.hpp"
#include "privgraph/oracles.hpp"
#include "privgraph/spectral_release.hpp"

namespace privgraph {

double default_failure_rate(int n) {
  if (n < 2) return 0.49;
  const double raw = 1.0 / std::pow(std::log(static_cast<double>(n)), 0.25);
  return std::min(0.49, raw);
}

namespace {

// Left side of the composition identity as a function of the per-round
// budget; strictly increasing on x > 0.
double composed_epsilon(double x, int64_t rounds, double log_inv_delta) {
  const double k = static_cast<double>(rounds);
  return std::sqrt(2.0 * k * log_inv_delta) * x + k * x * std::expm1(x);
}

}  // namespace

mirror_descent_resolved resolve_mirror_descent(
    int n, double epsilon, double delta, const mirror_descent_config& config) {
  if (n < 1) throw std::invalid_argument("resolve_mirror_descent: n must be >= 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("resolve_mirror_descent: epsilon must be positive");
  }
  if (!(delta > 0.0 && delta < 0.5)) {
    throw std::invalid_argument("resolve_mirror_descent: delta must lie in (0, 0.5)");
  }
  if (config.iterations < 0) {
    throw config_error("resolve_mirror_descent: iterations must be >= 0");
  }
  if (config.eta < 0.0 || !std::isfinite(config.eta)) {
    throw config_error("resolve_mirror_descent: eta must be finite and >= 0");
  }

  mirror_descent_resolved out;
  if (config.iterations > 0) {
    out.iterations = config.iterations;
  } else {
    const double nn = static_cast<double>(n);
    out.iterations = std::max<int64_t>(
        1, static_cast<int64_t>(std::ceil(nn * std::log(nn))));
  }
  out.eta = config.eta > 0.0
                ? config.eta
                : 1.0 / std::sqrt(static_cast<double>(out.iterations));
  out.mass_fraction = config.mass_fraction == 0.0 ? 0.5 : config.mass_fraction;
  if (!(out.mass_fraction > 0.0 && out.mass_fraction < 1.0)) {
    throw config_error(
        "resolve_mirror_descent: mass_fraction must lie in (0, 1)");
  }

  out.mass_epsilon = out.mass_fraction * epsilon;
  out.mass_scale = 1.0 / out.mass_epsilon;

  const double target = epsilon - out.mass_epsilon;
  const double log_inv_delta = std::log(1.0 / delta);
  double lo = 0.0;
  double hi = target;
  while (composed_epsilon(hi, out.iterations, log_inv_delta) < target) {
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw config_error("resolve_mirror_descent: budget split infeasible");
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (composed_epsilon(mid, out.iterations, log_inv_delta) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.round_epsilon = 0.5 * (lo + hi);
  if (!(out.round_epsilon > 0.0) || !std::isfinite(1.0 / out.round_epsilon)) {
    throw config_error(
        "resolve_mirror_descent: per-round budget too small for the "
        "requested iteration count");
  }
  out.round_scale = 1.0 / out.round_epsilon;
  out.noise_floor = out.mass_scale;
  return out;
}

mirror_descent_result mirror_descent_synthesize(
    const graph& g_light, double epsilon, double delta, double beta,
    const mirror_descent_config& config, rng& r, budget_ledger* ledger) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument(
        "mirror_descent_synthesize: beta must lie in (0, 1)");
  }
  if (g_light.has_negative()) {
    throw std::invalid_argument(
        "mirror_descent_synthesize: input weights must be non-negative");
  }

  const int n = g_light.n();
  const int64_t slots = g_light.slots();

  mirror_descent_result result;
  result.resolved = resolve_mirror_descent(n, epsilon, delta, config);
  const mirror_descent_resolved& p = result.resolved;

  if (ledger) {
    ledger->charge("residual_mass", privacy_budget{p.mass_epsilon, 0.0});
    ledger->charge("residual_rounds",
                   privacy_budget{epsilon - p.mass_epsilon, delta});
  }

  result.synthetic = graph(n);
  if (slots == 0) {
    result.max_cut_error = 0.0;
    return result;
  }

  double mass = g_light.weight_l1() + laplace_noise(p.mass_scale, r);
  if (mass < 0.0) mass = 0.0;

  std::vector<double> x(static_cast<size_t>(slots),
                        mass / static_cast<double>(slots));
  std::vector<double> average(static_cast<size_t>(slots), 0.0);
  std::vector<int> side(static_cast<size_t>(n), 0);
  std::vector<int> s_side, t_side;
  std::vector<edge_id> crossing;
  s_side.reserve(n);
  t_side.reserve(n);
  crossing.reserve(static_cast<size_t>(slots));

  for (int64_t round = 0; round < p.iterations; ++round) {
    s_side.clear();
    t_side.clear();
    for (int v = 0; v < n; ++v) {
      side[v] = static_cast<int>(r.uniform_below(3));
      if (side[v] == 1) s_side.push_back(v);
      if (side[v] == 2) t_side.push_back(v);
    }

    double true_answer = 0.0;
    for (const auto& [e, w] : g_light.stored()) {
      const auto [u, v] = edge_endpoints(e, n);
      if ((side[u] == 1 && side[v] == 2) || (side[u] == 2 && side[v] == 1)) {
        true_answer += w;
      }
    }
    const double noisy_answer = true_answer + laplace_noise(p.round_scale, r);

    crossing.clear();
    double synthetic_answer = 0.0;
    for (int u : s_side) {
      for (int v : t_side) {
        const edge_id e = edge_index(u, v, n);
        crossing.push_back(e);
        synthetic_answer += x[static_cast<size_t>(e)];
      }
    }

    const double err = synthetic_answer - noisy_answer;
    if (mass > 0.0 && err != 0.0 && !crossing.empty()) {
      const double factor = std::exp(err > 0.0 ? -p.eta : p.eta);
      for (edge_id e : crossing) x[static_cast<size_t>(e)] *= factor;
      const double new_total =
          mass + (factor - 1.0) * synthetic_answer;
      if (new_total > 0.0) {
        const double rescale = mass / new_total;
        for (double& w : x) w *= rescale;
      }
    }
    for (int64_t j = 0; j < slots; ++j) {
      average[static_cast<size_t>(j)] += x[static_cast<size_t>(j)];
    }
  }

  const double inv_rounds = 1.0 / static_cast<double>(p.iterations);
  for (int64_t j = 0; j < slots; ++j) {
    const double w = average[static_cast<size_t>(j)] * inv_rounds;
    if (w != 0.0) result.synthetic.set_weight_by_id(j, w);
  }

  if (n <= 10) {
    result.max_cut_error =
        brute_force_max_cut_error(g_light, result.synthetic).error;
  }
  return result;
}

cut_release_result cut_release(const graph& g, double epsilon, double delta,
                               double beta, uint64_t seed,
                               const mirror_descent_config& md_config,
                               budget_ledger* ledger) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("cut_release: epsilon must be positive");
  }
  if (!(delta > 0.0 && delta < 0.5)) {
    throw std::invalid_argument("cut_release: delta must lie in (0, 0.5)");
  }
  if (g.has_negative()) {
    throw std::invalid_argument(
        "cut_release: input graph must have non-negative weights");
  }
  const int n = g.n();
  if (beta == 0.0) beta = default_failure_rate(n);
  if (!(beta > 0.0 && beta < 0.5)) {
    throw std::invalid_argument("cut_release: beta must lie in (0, 0.5)");
  }

  budget_ledger local;
  budget_ledger& led = ledger ? *ledger : local;

  rng count_rng(derive_seed(seed, 0));
  rng topology_rng(derive_seed(seed, 1));
  rng weight_rng(derive_seed(seed, 2));
  rng md_rng(derive_seed(seed, 3));

  cut_release_result result;
  result.heavy_part = graph(n);
  result.light_part = graph(n);
  result.true_edge_count = g.positive_count();
  result.epsilon = epsilon;
  result.delta = delta;
  result.beta = beta;
  result.seed = seed;
  result.budget = privacy_budget{5.0 * epsilon, delta};

  result.m_hat =
      perturbed_edge_count(result.true_edge_count, g.slots(), epsilon, beta,
                           count_rng);
  led.charge("edge_count", privacy_budget{epsilon, 0.0});

  const std::vector<edge_id> sampled =
      topology_sample(g, result.m_hat, epsilon, topology_rng, &led);

  const double scale = 1.0 / epsilon;
  for (edge_id e : sampled) {
    result.heavy_part.set_weight_signed_by_id(
        e, g.weight_by_id(e) + laplace_noise(scale, weight_rng));
  }
  led.charge("edge_weights", privacy_budget{epsilon, 0.0});

  graph residual(n);
  std::vector<bool> in_sample(static_cast<size_t>(g.slots()), false);
  for (edge_id e : sampled) in_sample[static_cast<size_t>(e)] = true;
  for (const auto& [e, w] : g.stored()) {
    if (w > 0.0 && !in_sample[static_cast<size_t>(e)]) {
      residual.set_weight_by_id(e, w);
      result.residual_max_weight = std::max(result.residual_max_weight, w);
    }
  }

  mirror_descent_result md = mirror_descent_synthesize(
      residual, epsilon, delta, beta, md_config, md_rng, &led);
  result.light_part = md.synthetic;
  result.md = md.resolved;
  result.md_max_cut_error = md.max_cut_error;

  result.synthetic = graph_sum(result.heavy_part, result.light_part);
  return result;
}

}  // namespace privgraph
