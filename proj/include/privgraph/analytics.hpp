#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "privgraph/dp.hpp"
#include "privgraph/graph.hpp"
#include "privgraph/laplacian.hpp"
#include "privgraph/rng.hpp"

namespace privgraph {

struct pseudoinverse_result {
  Eigen::MatrixXd matrix;
  int rank = 0;            // eigenvalues above the zero threshold
  double zero_threshold = 0.0;
};

// Moore-Penrose pseudoinverse of a symmetric matrix via a full
// eigendecomposition; eigenvalues at or below 1e-10 * lambda_max are
// treated as zero and inverted to zero.
pseudoinverse_result pseudoinverse(const Eigen::MatrixXd& sym);

// Electrical resistance between u and v with edge weights as conductances:
// the quadratic form (e_u - e_v)^T L_pinv (e_u - e_v). Requires a connected
// graph and u != v.
double effective_resistance(const graph& g, int u, int v);

// All pairwise resistances from a single pseudoinverse; entry (u, v) is the
// resistance, diagonal 0. Requires a connected graph.
Eigen::MatrixXd all_pairs_resistance(const graph& g);

// |R(u,v) on complete unit graph - R(u,v) after deleting one edge|, the
// worst-case change a single unit edge can make on an n-vertex complete
// graph. Closed form 2 / (n * (n/2 - 1)); computed here from the two
// pseudoinverses. Requires n >= 4.
double resistance_sensitivity_demo(int n);

// Expected round-trip times of the weighted random walk, one entry per
// vertex pair (indexed by edge_id): C_{u,v} = 2 * ||w||_1 * R(u, v).
// Requires a connected graph.
std::vector<double> commute_times_exact(const graph& g);

struct cover_time_bounds_result {
  double lower = 0.0;  // max commute / 2
  double upper = 0.0;  // max commute * (1 + ln n)
};

// Worst-start expected time to visit every vertex, bracketed through the
// maximum pairwise commute time. The commute vector must be nonempty.
cover_time_bounds_result cover_time_bounds(const std::vector<double>& commute,
                                           int n);

struct private_commute_result {
  std::vector<double> estimates;  // per pair, indexed by edge_id
  graph released{1};              // synthetic graph the estimates came from
  bool repaired = false;          // complete-graph overlay was needed
  double total_weight_estimate = 0.0;
  privacy_budget budget;          // (epsilon, 0)
  bool utility_precondition_met = true;
};

// Commute-time estimates from one synthetic-graph release.
//
//   1. release the graph with budget epsilon/8 per stage   -- charge epsilon/2
//      (if the released graph is disconnected, overlay a complete graph at
//       weight 1/n; post-processing, no extra charge)
//   2. W_hat = ||w||_1 + Lap(2/epsilon)                    -- charge epsilon/2
//   3. estimate per pair: 2 * W_hat * R_released(u, v)
//
// The factor 2 matches the round-trip identity C = 2 ||w||_1 R, with W_hat
// standing in for ||w||_1. The estimates are post-processing of the two
// private values, so the ledger totals exactly epsilon.
//
// The utility guarantee behind this estimator needs the spectral gap to
// dominate max_degree * ln(n)^2 / epsilon; when that fails the estimate is
// still produced but utility_precondition_met is set to false.
//
// Requires a connected non-negative input, epsilon > 0, beta in (0, 0.5).
private_commute_result private_commute_times(const graph& g, double epsilon,
                                             double beta, uint64_t seed,
                                             budget_ledger* ledger = nullptr);

struct hitting_vector {
  int target = 0;
  std::vector<double> values;  // values[target] == 0
};

// Expected first-visit times to target t from every start, by solving
// L h = d^t where d^t[u] = d(u) except d^t[t] = d(t) - 2 ||w||_1, then
// shifting so h[t] = 0. Requires a connected graph.
hitting_vector hitting_times_exact(const graph& g, int t);

// All ordered pairwise hitting times from all-pairs resistances:
//   h(u, v) = ||w||_1 R(u,v) + sum_i d(i)/2 * (R(v,i) - R(i,u)).
// Entry (u, v) of the returned matrix is h(u, v); diagonal 0. Agrees with
// the linear-system route on connected graphs. Requires a connected graph.
Eigen::MatrixXd hitting_times_tetali(const graph& g);

struct private_hitting_result {
  std::vector<hitting_vector> vectors;  // one per target, 0..n-1
  graph released{1};
  bool repaired = false;
  std::vector<double> noisy_degrees;  // the published degree sequence
  privacy_budget budget;              // (epsilon, 0)
  bool utility_precondition_met = true;
};

// Hitting-time estimates for every target from one synthetic-graph release
// plus one noisy degree sequence.
//
//   1. release the graph with budget epsilon/8 per stage   -- charge epsilon/2
//      (complete-graph overlay at weight 1/n when disconnected)
//   2. publish d_hat[i] = d(i) + Lap(4/epsilon), i.i.d.    -- charge epsilon/2
//      (one edge weight moves two degrees, hence scale 4/epsilon for
//       sensitivity 2; entries may be negative, which is fine because the
//       vector only feeds a linear solve, never a walk)
//   3. per target t: d_hat_t equals d_hat except
//      d_hat_t[t] = d_hat[t] - sum(d_hat); apply the released graph's
//      pseudoinverse and shift so the target entry is exactly 0.
//
// All n target vectors reuse the same release and the same noisy degrees,
// so the ledger totals exactly epsilon.
//
// Requires a connected non-negative input, epsilon > 0, beta in (0, 0.5).
private_hitting_result private_hitting_times(const graph& g, double epsilon,
                                             double beta, uint64_t seed,
                                             budget_ledger* ledger = nullptr);

}  // namespace privgraph
