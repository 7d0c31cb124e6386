#pragma once

#include <cstdint>

#include "privgraph/dp.hpp"
#include "privgraph/graph.hpp"
#include "privgraph/rng.hpp"

namespace privgraph {

// Noisy upward-biased edge-count estimate:
//
//   clamp to [0, n_slots] of  ceil( m + Lap(1/epsilon) + ln(1/beta)/epsilon ).
//
// The additive ln(1/beta)/epsilon shift makes the estimate an overcount of
// the true edge count m with probability at least 1 - beta.
//
// Preconditions: 0 <= m <= n_slots, epsilon > 0, beta in (0, 0.5).
// Consumes exactly one Laplace draw from r.
int64_t perturbed_edge_count(int64_t m, int64_t n_slots, double epsilon,
                             double beta, rng& r);

struct spectral_release_result {
  graph synthetic{1};          // exactly m_hat stored slots, all weights >= 0
  int64_t true_edge_count = 0; // positive slots of the input (diagnostic)
  int64_t m_hat = 0;           // released slot count
  double epsilon = 0.0;
  double beta = 0.0;
  uint64_t seed = 0;
  privacy_budget budget;       // (4*epsilon, 0)
};

// Synthetic-graph release with non-negative weights.
//
// Pipeline (three independent noise streams derived from seed):
//   1. m_hat = perturbed_edge_count(m, N, epsilon, beta)       -- charge epsilon
//   2. slots = fixed-size sample of m_hat slots, where slot e is favoured
//      with log-odds epsilon * w_e                             -- charge 2*epsilon
//   3. weight w_hat_e = max{0, w_e + Lap(1/epsilon)} for each sampled slot,
//      in ascending slot order                                 -- charge epsilon
//
// Sampled slots whose clamped weight is 0 are kept as explicit zero-weight
// slots: the released topology always has exactly m_hat slots.
//
// Requirements: epsilon > 0, beta in (0, 0.5), input weights non-negative.
// Charges "edge_count", "topology_sample", "edge_weights" to the ledger when
// one is given; the total is always (4*epsilon, 0).
spectral_release_result spectral_release(const graph& g, double epsilon,
                                         double beta, uint64_t seed,
                                         budget_ledger* ledger = nullptr);

}  // namespace privgraph
