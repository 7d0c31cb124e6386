#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "privgraph/graph.hpp"
#include "privgraph/rng.hpp"

namespace privgraph {

class budget_ledger;

// An (epsilon, delta) privacy charge. epsilon may be 0 only for identity
// charges; mechanisms themselves require strictly positive epsilon.
struct privacy_budget {
  double epsilon = 0;
  double delta = 0;
};

privacy_budget compose_sequential(const privacy_budget& a,
                                  const privacy_budget& b);

// k-fold composition of an (epsilon, delta) mechanism at slack delta_prime:
//   epsilon' = sqrt(2k log(1/delta')) * epsilon + k * epsilon * (e^epsilon - 1)
//   delta'   = k * delta + delta_prime
privacy_budget compose_advanced(double epsilon, double delta, int64_t k,
                                double delta_prime);

// Append-only record of charges. Totals compose sequentially; exceeding a
// configured cap only warns (sets a flag), it never blocks a mechanism.
class budget_ledger {
 public:
  void charge(const std::string& label, const privacy_budget& b);
  privacy_budget total() const;
  const std::vector<std::pair<std::string, privacy_budget>>& entries() const {
    return entries_;
  }
  void set_cap(const privacy_budget& cap) { cap_ = cap; }
  bool over_cap() const;

 private:
  std::vector<std::pair<std::string, privacy_budget>> entries_;
  std::optional<privacy_budget> cap_;
};

// Zero-centered Laplace draw with scale b > 0, by inverse CDF on a uniform
// from the open unit interval.
double laplace_noise(double b, rng& r);

// Draws a k-subset of the n*(n-1)/2 vertex-pair slots with probability
// proportional to exp(epsilon * total selected weight). Realized by fixed-
// count conditional sampling of independent slot coins with
// p_e = exp(epsilon * w_e) / (1 + exp(epsilon * w_e)). Charges 2*epsilon to
// the ledger when one is given. O(k * n^2) time.
std::vector<edge_id> topology_sample(const graph& g, int64_t k, double epsilon,
                                     rng& r, budget_ledger* ledger = nullptr);

}  // namespace privgraph
