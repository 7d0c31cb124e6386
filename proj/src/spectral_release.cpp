#include "privgraph/spectral_release.hpp"

#include <cmath>
#include <stdexcept>

#include "privgraph/errors.hpp"

namespace privgraph {

int64_t perturbed_edge_count(int64_t m, int64_t n_slots, double epsilon,
                             double beta, rng& r) {
  if (n_slots < 0) {
    throw std::invalid_argument("perturbed_edge_count: negative slot count");
  }
  if (m < 0 || m > n_slots) {
    throw std::invalid_argument(
        "perturbed_edge_count: edge count must lie in [0, n_slots]");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("perturbed_edge_count: epsilon must be positive");
  }
  if (!(beta > 0.0 && beta < 0.5)) {
    throw std::invalid_argument("perturbed_edge_count: beta must lie in (0, 0.5)");
  }
  const double shifted = static_cast<double>(m) + laplace_noise(1.0 / epsilon, r) +
                         std::log(1.0 / beta) / epsilon;
  const double up = std::ceil(shifted);
  if (!(up > 0.0)) return 0;
  if (up >= static_cast<double>(n_slots)) return n_slots;
  return static_cast<int64_t>(up);
}

spectral_release_result spectral_release(const graph& g, double epsilon,
                                         double beta, uint64_t seed,
                                         budget_ledger* ledger) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("spectral_release: epsilon must be positive");
  }
  if (!(beta > 0.0 && beta < 0.5)) {
    throw std::invalid_argument("spectral_release: beta must lie in (0, 0.5)");
  }
  if (g.has_negative()) {
    throw std::invalid_argument(
        "spectral_release: input graph must have non-negative weights");
  }

  const int n = g.n();
  const int64_t slots = g.slots();
  const int64_t m = g.positive_count();

  budget_ledger local;
  budget_ledger& led = ledger ? *ledger : local;

  rng count_rng(derive_seed(seed, 0));
  rng topology_rng(derive_seed(seed, 1));
  rng weight_rng(derive_seed(seed, 2));

  spectral_release_result result;
  result.synthetic = graph(n);
  result.true_edge_count = m;
  result.epsilon = epsilon;
  result.beta = beta;
  result.seed = seed;
  result.budget = privacy_budget{4.0 * epsilon, 0.0};

  result.m_hat = perturbed_edge_count(m, slots, epsilon, beta, count_rng);
  led.charge("edge_count", privacy_budget{epsilon, 0.0});

  const std::vector<edge_id> sampled =
      topology_sample(g, result.m_hat, epsilon, topology_rng, &led);

  const double scale = 1.0 / epsilon;
  for (edge_id e : sampled) {
    const double noisy = g.weight_by_id(e) + laplace_noise(scale, weight_rng);
    result.synthetic.set_weight_by_id(e, noisy > 0.0 ? noisy : 0.0);
  }
  led.charge("edge_weights", privacy_budget{epsilon, 0.0});

  if (result.synthetic.stored().size() != sampled.size()) {
    throw internal_error("spectral_release: released slot count mismatch");
  }
  for (const auto& [e, w] : result.synthetic.stored()) {
    (void)e;
    if (!(w >= 0.0)) {
      throw internal_error("spectral_release: negative released weight");
    }
  }
  return result;
}

}  // namespace privgraph
