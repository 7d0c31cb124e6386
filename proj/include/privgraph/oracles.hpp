#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "privgraph/conditional.hpp"
#include "privgraph/graph.hpp"
#include "privgraph/rng.hpp"

namespace privgraph {

struct max_cut_error_result {
  double error = 0.0;
  cut_query witness;  // first assignment attaining the maximum
};

// Exhaustive maximum over all disjoint (S, T) pairs of
// |cut_value(g, q) - cut_value(h, q)|. Every vertex independently lands in
// S, T, or neither, so the search space has 3^n assignments; they are
// scanned in base-3 counting order with vertex 0 as the most significant
// digit and digit order none < S < T, and ties keep the first assignment
// found. Requires g.n() == h.n() and n <= 13.
max_cut_error_result brute_force_max_cut_error(const graph& g, const graph& h);

struct distribution_test_result {
  double tv_distance = 0.0;
  double chi2_pvalue = 1.0;
};

// Compares empirical draw counts against an exact distribution over subset
// bitmasks. TV distance is half the L1 gap between the empirical and exact
// mass functions (masks outside the exact support count in full). The
// chi-square statistic pools bins with expected count below 5, smallest
// first; with fewer than two bins left the p-value is 1.
distribution_test_result distribution_test_from_counts(
    const std::map<uint32_t, int64_t>& counts, int64_t draws,
    const std::map<uint32_t, double>& exact);

// Runs the fixed-count sampler `draws` times and tests the empirical subset
// frequencies against the enumerated conditional distribution. Requires
// profile size <= 20 (the reference enumeration is exponential).
distribution_test_result sampler_distribution_test(
    const bernoulli_profile& profile, int k, int64_t draws, rng& r);

}  // namespace privgraph
