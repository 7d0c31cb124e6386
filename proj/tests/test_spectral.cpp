#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "privgraph/dp.hpp"
#include "privgraph/experiments.hpp"
#include "privgraph/graph.hpp"
#include "privgraph/rng.hpp"
#include "privgraph/spectral_release.hpp"

using namespace privgraph;

namespace {

// Largest |input weight - released weight| over slots stored in either graph.
double max_slot_error(const graph& a, const graph& b) {
  double worst = 0.0;
  for (const auto& [id, w] : a.stored()) {
    worst = std::max(worst, std::abs(w - b.weight_by_id(id)));
  }
  for (const auto& [id, w] : b.stored()) {
    worst = std::max(worst, std::abs(a.weight_by_id(id) - w));
  }
  return worst;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

TEST_CASE("noisy edge count reproduces its formula draw for draw") {
  const int64_t m = 10, slots = 100;
  const double epsilon = 1.0, beta = std::exp(-2.0);
  for (uint64_t seed = 0; seed < 100; ++seed) {
    rng formula_rng(seed);
    const double noisy =
        m + laplace_noise(1 / epsilon, formula_rng) + std::log(1 / beta) / epsilon;
    const int64_t expected =
        std::clamp<int64_t>(static_cast<int64_t>(std::ceil(noisy)), 0, slots);
    rng r(seed);
    CHECK(perturbed_edge_count(m, slots, epsilon, beta, r) == expected);
  }
}

TEST_CASE("noisy edge count averages m + 2.5 when the shift is two") {
  // With shift ln(1/beta)/eps = 2, the count is ceil(m + 2 + Z); the ceiling
  // of a symmetric Laplace adds exactly 1/2 in expectation.
  rng r(201);
  const int64_t trials = 40000;
  double sum = 0.0;
  for (int64_t t = 0; t < trials; ++t) {
    sum += static_cast<double>(
        perturbed_edge_count(10, 1000, 1.0, std::exp(-2.0), r));
  }
  const double mean = sum / trials;
  CHECK(mean >= 12.4);
  CHECK(mean <= 12.6);
}

TEST_CASE("noisy edge count overshoots the true count with the promised rate") {
  const double beta = 0.25;
  rng r(202);
  const int64_t trials = 10000;
  int64_t at_least_m = 0;
  for (int64_t t = 0; t < trials; ++t) {
    if (perturbed_edge_count(50, 10000, 1.0, beta, r) >= 50) ++at_least_m;
  }
  CHECK(at_least_m / static_cast<double>(trials) >= 1 - beta - 0.01);
}

TEST_CASE("noisy edge count clamps to the slot range") {
  rng r(203);
  for (int trial = 0; trial < 100; ++trial) {
    // At the top: the upward shift dominates, so the clamp binds at N.
    CHECK(perturbed_edge_count(45, 45, 1.0, 1e-6, r) == 45);
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int64_t c = perturbed_edge_count(0, 10, 0.5, 0.25, r);
    CHECK(c >= 0);
    CHECK(c <= 10);
  }
}

TEST_CASE("noisy edge count validates its inputs") {
  rng r(204);
  CHECK_THROWS_AS(perturbed_edge_count(-1, 10, 1.0, 0.25, r),
                  std::invalid_argument);
  CHECK_THROWS_AS(perturbed_edge_count(11, 10, 1.0, 0.25, r),
                  std::invalid_argument);
  CHECK_THROWS_AS(perturbed_edge_count(5, 10, 0.0, 0.25, r),
                  std::invalid_argument);
  CHECK_THROWS_AS(perturbed_edge_count(5, 10, 1.0, 0.5, r),
                  std::invalid_argument);
  CHECK_THROWS_AS(perturbed_edge_count(5, 10, 1.0, 0.0, r),
                  std::invalid_argument);
}

TEST_CASE("release of an empty graph is pure clamped noise on m_hat slots") {
  const graph empty(6);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const auto rel = spectral_release(empty, 1.0, 0.25, seed);
    CHECK(rel.true_edge_count == 0);
    CHECK(static_cast<int64_t>(rel.synthetic.stored().size()) == rel.m_hat);
    for (const auto& [id, w] : rel.synthetic.stored()) CHECK(w >= 0.0);
  }
}

TEST_CASE("released weights are never negative") {
  rng meta(205);
  weight_law law;
  law.kind = weight_law_kind::uniform;
  law.value = 2.0;
  for (int rep = 0; rep < 30; ++rep) {
    const graph g = random_gnm_graph(8, 12, law, meta);
    const auto rel = spectral_release(g, 0.5, 0.25, derive_seed(206, rep));
    CHECK_FALSE(rel.synthetic.has_negative());
    CHECK(static_cast<int64_t>(rel.synthetic.stored().size()) == rel.m_hat);
  }
}

TEST_CASE("the ledger of one release totals exactly four epsilon") {
  graph g(5);
  g.set_weight(0, 1, 2.0);
  g.set_weight(2, 4, 1.0);
  for (const double epsilon : {0.25, 1.0, 8.0}) {
    budget_ledger ledger;
    const auto rel = spectral_release(g, epsilon, 0.25, 7, &ledger);
    CHECK(rel.budget.epsilon == doctest::Approx(4 * epsilon).epsilon(1e-15));
    CHECK(rel.budget.delta == 0.0);
    CHECK(ledger.total().epsilon == doctest::Approx(4 * epsilon).epsilon(1e-15));
    CHECK(ledger.total().delta == 0.0);
    REQUIRE(ledger.entries().size() == 3);
    CHECK(ledger.entries()[0].first == "edge_count");
    CHECK(ledger.entries()[1].first == "topology_sample");
    CHECK(ledger.entries()[2].first == "edge_weights");
  }
}

TEST_CASE("negative input weights are rejected") {
  graph g(3);
  g.set_weight_signed(0, 1, -0.5);
  CHECK_THROWS_AS(spectral_release(g, 1.0, 0.25, 1), std::invalid_argument);
}

TEST_CASE("a low-noise release reproduces a heavy distinct-weight graph") {
  // At epsilon = 100 the sampler concentrates on the true topology and the
  // weight noise is tiny: the release contains every input edge with weight
  // within 0.1, in at least 99% of trials.
  graph g(4);
  g.set_weight(0, 1, 4.0);
  g.set_weight(0, 2, 3.0);
  g.set_weight(1, 3, 2.0);
  g.set_weight(2, 3, 1.0);
  const double epsilon = 100.0;
  int good = 0;
  const int trials = 300;
  for (int t = 0; t < trials; ++t) {
    const auto rel = spectral_release(g, epsilon, 0.25, derive_seed(207, t));
    bool ok = true;
    for (const auto& [id, w] : g.stored()) {
      if (!rel.synthetic.has_slot(edge_endpoints(id, 4).first,
                                  edge_endpoints(id, 4).second) ||
          std::abs(rel.synthetic.weight_by_id(id) - w) > 0.1) {
        ok = false;
      }
    }
    if (ok) ++good;
  }
  CHECK(good >= trials * 0.99);
}

TEST_CASE("per-edge error stays within a logarithmic envelope") {
  // n = 50 random unit graphs at epsilon 1: the worst per-slot deviation is
  // at most 10 ln(n) / epsilon in at least 99% of trials.
  const int n = 50;
  const double epsilon = 1.0;
  const double bound = 10 * std::log(n) / epsilon;
  weight_law law;  // constant 1
  rng meta(208);
  const graph g = random_gnm_graph(n, 100, law, meta);
  int within = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const auto rel = spectral_release(g, epsilon, 0.25, derive_seed(209, t));
    if (max_slot_error(g, rel.synthetic) <= bound) ++within;
  }
  CHECK(within >= trials * 0.99);
}

TEST_CASE("released degrees grow at most logarithmically") {
  // Degree-capped inputs at n = 200, epsilon = 1: the median released
  // max degree stays below 6 * cap * ln(n) for caps 4 and 8.
  const int n = 200;
  rng meta(210);
  weight_law law;  // constant 1
  for (const int cap : {4, 8}) {
    const graph g = random_degree_capped_graph(n, cap, law, meta);
    std::vector<double> released_degree;
    for (int t = 0; t < 50; ++t) {
      const auto rel = spectral_release(g, 1.0, 0.25, derive_seed(211 + cap, t));
      released_degree.push_back(rel.synthetic.max_unweighted_degree());
    }
    CHECK(median(released_degree) <= 6.0 * cap * std::log(n));
  }
}
