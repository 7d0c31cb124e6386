#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "privgraph/rng.hpp"

namespace privgraph {

// log(exp(a) + exp(b)) without overflow; -inf encodes a zero probability.
double log_add_exp(double a, double b);

// Success probabilities of N independent Bernoulli coins, held as log-odds.
// Probability 1 (log-odds +inf) is rejected: conditioning arguments below
// need every coin to be refusable. log-odds -inf (probability 0) is allowed.
// Near-certain coins are representable directly, e.g. log-odds 700.
class bernoulli_profile {
 public:
  static bernoulli_profile from_probabilities(const std::vector<double>& p);
  static bernoulli_profile from_log_odds(const std::vector<double>& lo);

  int size() const { return static_cast<int>(log_odds_.size()); }
  double log_odds(int i) const { return log_odds_[i]; }
  double log_p(int i) const { return log_p_[i]; }      // log p_i
  double log_q(int i) const { return log_q_[i]; }      // log (1 - p_i)
  double probability(int i) const;
  const std::vector<double>& log_p() const { return log_p_; }
  const std::vector<double>& log_q() const { return log_q_; }

 private:
  bernoulli_profile() = default;
  std::vector<double> log_odds_, log_p_, log_q_;
};

// Table of suffix success-count probabilities under the product measure:
// entry (i, q) holds log Pr[exactly q successes among coins i..N-1], for
// i in [0, N] and q in [0, k]. Row N is the empty suffix. Built by the
// backward recurrence
//   P(i, q) = p_i * P(i+1, q-1) + (1 - p_i) * P(i+1, q)
// evaluated in log space, so profiles with extreme odds stay representable.
// Unreachable counts (q > N - i) are stored as -inf without computation.
class suffix_count_table {
 public:
  suffix_count_table(const bernoulli_profile& profile, int k);

  int size_n() const { return n_; }
  int max_count() const { return k_; }
  double log_suffix(int i, int q) const;

 private:
  int n_, k_;
  std::vector<double> data_;  // (n_+1) rows of stride (k_+1)
};

// Probability that coin i succeeds given that coins i..N-1 must contribute
// exactly `remaining` successes in total. Exact 0 and 1 are returned when
// the conditioning forces the coin.
double conditional_marginal(const bernoulli_profile& profile,
                            const suffix_count_table& table, int i,
                            int remaining);

// Draws a subset of exactly k coin indices with probability proportional to
// the product measure restricted to k successes. One pass over the coins:
// each coin is resolved by its conditional marginal, the last one by the
// residual count. O(N*k) to build the table, O(N) per draw after that.
std::vector<int> sample_fixed_count(const bernoulli_profile& profile, int k,
                                    rng& r);
std::vector<int> sample_fixed_count(const bernoulli_profile& profile,
                                    const suffix_count_table& table, int k,
                                    rng& r);

// Exact distribution over k-subsets by direct summation of the product
// measure; the reference oracle for the sampler. Keys are bitmasks with bit
// i set when coin i succeeds. Guarded to N <= 22.
std::map<uint32_t, double> enumerate_conditional(
    const bernoulli_profile& profile, int k);

}  // namespace privgraph
