#include "privgraph/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include <boost/math/distributions/chi_squared.hpp>

#include "privgraph/errors.hpp"

namespace privgraph {

max_cut_error_result brute_force_max_cut_error(const graph& g,
                                               const graph& h) {
  if (g.n() != h.n()) {
    throw std::invalid_argument(
        "brute_force_max_cut_error: graphs must share the vertex count");
  }
  const int n = g.n();
  if (n > 13) {
    throw capacity_error(
        "brute_force_max_cut_error: 3^n search needs n <= 13");
  }

  // Per-slot weight differences; only these slots can move a cut value.
  std::vector<std::tuple<int, int, double>> diff;
  {
    std::map<edge_id, double> d = g.stored();
    for (const auto& [e, w] : h.stored()) d[e] -= w;
    for (const auto& [e, w] : d) {
      if (w != 0.0) {
        const auto [u, v] = edge_endpoints(e, n);
        diff.emplace_back(u, v, w);
      }
    }
  }

  std::vector<int> assign(static_cast<size_t>(n), 0);  // 0 none, 1 S, 2 T
  max_cut_error_result best;
  bool have_best = false;

  for (;;) {
    double gap = 0.0;
    for (const auto& [u, v, w] : diff) {
      const int a = assign[static_cast<size_t>(u)];
      const int b = assign[static_cast<size_t>(v)];
      if ((a == 1 && b == 2) || (a == 2 && b == 1)) gap += w;
    }
    const double err = std::fabs(gap);
    if (!have_best || err > best.error) {
      have_best = true;
      best.error = err;
      best.witness.s.clear();
      best.witness.t.clear();
      for (int v = 0; v < n; ++v) {
        if (assign[static_cast<size_t>(v)] == 1) best.witness.s.push_back(v);
        if (assign[static_cast<size_t>(v)] == 2) best.witness.t.push_back(v);
      }
    }

    // Advance the base-3 odometer; the last vertex is the fastest digit.
    int j = n - 1;
    while (j >= 0 && assign[static_cast<size_t>(j)] == 2) {
      assign[static_cast<size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
    ++assign[static_cast<size_t>(j)];
  }
  return best;
}

distribution_test_result distribution_test_from_counts(
    const std::map<uint32_t, int64_t>& counts, int64_t draws,
    const std::map<uint32_t, double>& exact) {
  if (draws <= 0) {
    throw std::invalid_argument(
        "distribution_test_from_counts: draws must be positive");
  }

  distribution_test_result out;

  double l1 = 0.0;
  for (const auto& [mask, p] : exact) {
    const auto it = counts.find(mask);
    const double emp =
        it == counts.end()
            ? 0.0
            : static_cast<double>(it->second) / static_cast<double>(draws);
    l1 += std::fabs(emp - p);
  }
  for (const auto& [mask, c] : counts) {
    if (exact.find(mask) == exact.end()) {
      l1 += static_cast<double>(c) / static_cast<double>(draws);
    }
  }
  out.tv_distance = 0.5 * l1;

  // Chi-square with small expected bins pooled (smallest expected first).
  std::vector<std::pair<double, double>> bins;  // (expected, observed)
  for (const auto& [mask, p] : exact) {
    const auto it = counts.find(mask);
    const double obs =
        it == counts.end() ? 0.0 : static_cast<double>(it->second);
    bins.emplace_back(p * static_cast<double>(draws), obs);
  }
  std::sort(bins.begin(), bins.end());
  std::vector<std::pair<double, double>> pooled;
  double acc_e = 0.0, acc_o = 0.0;
  for (const auto& [e, o] : bins) {
    acc_e += e;
    acc_o += o;
    if (acc_e >= 5.0) {
      pooled.emplace_back(acc_e, acc_o);
      acc_e = acc_o = 0.0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0.0) {
    if (pooled.empty()) {
      pooled.emplace_back(acc_e, acc_o);
    } else {
      pooled.back().first += acc_e;
      pooled.back().second += acc_o;
    }
  }
  // Draws that landed outside the exact support have nowhere to go in the
  // expected bins; count them against the last bin so they inflate the
  // statistic instead of vanishing.
  double outside = 0.0;
  for (const auto& [mask, c] : counts) {
    if (exact.find(mask) == exact.end()) outside += static_cast<double>(c);
  }
  if (outside > 0.0 && !pooled.empty()) pooled.back().second += outside;

  if (pooled.size() < 2) {
    out.chi2_pvalue = 1.0;
    return out;
  }
  double stat = 0.0;
  for (const auto& [e, o] : pooled) stat += (o - e) * (o - e) / e;
  boost::math::chi_squared dist(static_cast<double>(pooled.size() - 1));
  out.chi2_pvalue = boost::math::cdf(boost::math::complement(dist, stat));
  return out;
}

distribution_test_result sampler_distribution_test(
    const bernoulli_profile& profile, int k, int64_t draws, rng& r) {
  if (profile.size() > 20) {
    throw capacity_error(
        "sampler_distribution_test: enumeration reference needs N <= 20");
  }
  const std::map<uint32_t, double> exact = enumerate_conditional(profile, k);

  suffix_count_table table(profile, k);
  std::map<uint32_t, int64_t> counts;
  for (int64_t d = 0; d < draws; ++d) {
    uint32_t mask = 0;
    for (int i : sample_fixed_count(profile, table, k, r)) {
      mask |= (1u << i);
    }
    ++counts[mask];
  }
  return distribution_test_from_counts(counts, draws, exact);
}

}  // namespace privgraph
