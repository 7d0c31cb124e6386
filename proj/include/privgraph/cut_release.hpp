#pragma once

#include <cstdint>
#include <limits>

#include "privgraph/dp.hpp"
#include "privgraph/graph.hpp"
#include "privgraph/rng.hpp"

namespace privgraph {

// Failure-rate default used by cut_release when the caller passes beta = 0:
// 1 / (ln n)^(1/4), clamped to 0.49 because the noisy edge-count step
// requires beta < 1/2 (the unclamped formula only drops below 1/2 for
// astronomically large n).
double default_failure_rate(int n);

// Tuning knobs for the iterative cut synthesizer. A zero value means "use
// the default for this graph":
//   iterations    -> ceil(n * ln n), at least 1
//   eta           -> 1 / sqrt(iterations)
//   mass_fraction -> 0.5
struct mirror_descent_config {
  int64_t iterations = 0;
  double eta = 0.0;
  // Fraction of epsilon spent on the noisy total-weight estimate; the rest
  // is split across the per-round noisy cut answers. Must resolve into (0, 1).
  double mass_fraction = 0.0;
};

// Fully resolved parameters for one synthesizer run.
struct mirror_descent_resolved {
  int64_t iterations = 0;
  double eta = 0.0;
  double mass_fraction = 0.0;
  double mass_epsilon = 0.0;   // budget of the total-weight estimate
  double mass_scale = 0.0;     // Laplace scale of that estimate (1/mass_epsilon)
  double round_epsilon = 0.0;  // per-round budget; see invariant below
  double round_scale = 0.0;    // Laplace scale of each noisy cut answer
  double noise_floor = 0.0;    // error scale on an all-zero input (= mass_scale)
};

// Computes the parameters above. round_epsilon is the solution x of
//
//   sqrt(2*T*ln(1/delta)) * x + T * x * (e^x - 1) = (1 - mass_fraction) * epsilon
//
// found by bisection, so that the T-fold composition of pure x-budget rounds
// at slack delta, plus the mass estimate, totals exactly (epsilon, delta).
// Throws config_error when the split is infeasible (mass_fraction outside
// (0, 1), or a per-round budget too small to represent).
mirror_descent_resolved resolve_mirror_descent(int n, double epsilon,
                                               double delta,
                                               const mirror_descent_config& config);

struct mirror_descent_result {
  graph synthetic{1};  // non-negative weights, possibly on all slots
  mirror_descent_resolved resolved;
  // Exhaustive max disjoint-(S,T) cut error versus the input, computed when
  // n <= 10 (NaN otherwise, where exhaustive search is too large).
  double max_cut_error = std::numeric_limits<double>::quiet_NaN();
};

// Iterative synthetic-graph construction answering noisy cut queries.
//
// The synthesizer keeps a positive weight vector over all N = n*(n-1)/2
// slots, initialized uniform with total mass equal to a noisy estimate of
// the input's total weight (Laplace, scale 1/(mass_fraction*epsilon),
// clamped at 0). Each round draws a uniformly random disjoint (S, T) pair
// (every vertex lands in S, T, or neither independently), compares the
// current synthetic cut value against a noisy answer on the input (Laplace,
// scale 1/round_epsilon), multiplies every crossing slot by
// exp(-eta * sign(difference)), and rescales to the fixed total mass. The
// output averages the iterates, which keeps all weights non-negative.
//
// beta is the failure-rate parameter of the utility statement attached to
// this construction; it does not influence the mechanism and is only
// validated (must lie in (0, 1)).
//
// Charges "residual_mass" (mass_epsilon, 0) and "residual_rounds"
// (epsilon - mass_epsilon, delta) to the ledger when one is given; the total
// is exactly (epsilon, delta).
mirror_descent_result mirror_descent_synthesize(
    const graph& g_light, double epsilon, double delta, double beta,
    const mirror_descent_config& config, rng& r,
    budget_ledger* ledger = nullptr);

struct cut_release_result {
  graph synthetic{1};   // heavy_part + light_part; weights may be negative
  graph heavy_part{1};  // noisy weights on the sampled slots, not clamped
  graph light_part{1};  // synthesized residual, non-negative
  int64_t true_edge_count = 0;
  int64_t m_hat = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double beta = 0.0;
  uint64_t seed = 0;
  privacy_budget budget;  // (5*epsilon, delta)
  // Largest input weight on a slot that the sample missed (0 when none).
  // Diagnostic only: this value is derived from the raw input, so it is not
  // part of the private release.
  double residual_max_weight = 0.0;
  mirror_descent_resolved md;
  // Carried over from the synthesizer run (n <= 10 only, else NaN).
  double md_max_cut_error = std::numeric_limits<double>::quiet_NaN();
};

// Two-part synthetic-graph release tuned for cut queries.
//
// Pipeline (independent noise streams derived from seed):
//   1. m_hat = perturbed_edge_count(m, N, epsilon, beta)       -- charge epsilon
//   2. sampled slots favoured with log-odds epsilon * w_e      -- charge 2*epsilon
//   3. heavy part: w_e + Lap(1/epsilon) on each sampled slot, deliberately
//      NOT clamped at zero (clamping would bias cut values)    -- charge epsilon
//   4. light part: mirror_descent_synthesize on the residual graph holding
//      the input weights outside the sample                    -- charge (epsilon, delta)
//
// Requirements: epsilon > 0, delta in (0, 0.5), beta in (0, 0.5) (pass 0 to
// use default_failure_rate(n)), input weights non-negative. Total ledger
// charge is exactly (5*epsilon, delta).
cut_release_result cut_release(const graph& g, double epsilon, double delta,
                               double beta, uint64_t seed,
                               const mirror_descent_config& md_config = {},
                               budget_ledger* ledger = nullptr);

}  // namespace privgraph
