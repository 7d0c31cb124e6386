#include "privgraph/conditional_exact.hpp"

#include <stdexcept>

#include "privgraph/errors.hpp"

namespace privgraph {

namespace {

constexpr int kMaxExactSize = 22;

void check_args(const std::vector<rational>& p, int k) {
  const int n = static_cast<int>(p.size());
  if (n < 1 || n > kMaxExactSize)
    throw capacity_error("exact mode is limited to 1..22 coins");
  if (k < 0 || k > n)
    throw std::invalid_argument("target count must lie in [0, N]");
  for (const rational& pi : p)
    if (pi < 0 || pi >= 1)
      throw std::invalid_argument("coin probability must lie in [0, 1)");
}

}  // namespace

std::vector<std::vector<rational>> exact_suffix_table(
    const std::vector<rational>& p, int k) {
  check_args(p, k);
  const int n = static_cast<int>(p.size());
  std::vector<std::vector<rational>> table(
      n + 1, std::vector<rational>(k + 1, rational(0)));
  table[n][0] = 1;
  for (int i = n - 1; i >= 0; --i)
    for (int q = 0; q <= k; ++q) {
      rational v = (1 - p[i]) * table[i + 1][q];
      if (q > 0) v += p[i] * table[i + 1][q - 1];
      table[i][q] = v;
    }
  return table;
}

std::map<uint32_t, rational> exact_enumerate(const std::vector<rational>& p,
                                             int k) {
  check_args(p, k);
  const int n = static_cast<int>(p.size());
  std::map<uint32_t, rational> weights;
  rational total = 0;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    rational w = 1;
    for (int i = 0; i < n; ++i)
      w *= (mask >> i & 1u) ? p[i] : 1 - p[i];
    if (w != 0) {
      weights[mask] = w;
      total += w;
    }
  }
  if (total == 0)
    throw std::invalid_argument(
        "target count has probability zero under this profile");
  for (auto& [mask, w] : weights) w /= total;
  return weights;
}

std::map<uint32_t, rational> exact_chain_distribution(
    const std::vector<rational>& p, int k) {
  check_args(p, k);
  const int n = static_cast<int>(p.size());
  const auto table = exact_suffix_table(p, k);
  if (table[0][k] == 0)
    throw std::invalid_argument(
        "target count has probability zero under this profile");

  std::map<uint32_t, rational> out;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    rational prob = 1;
    int remaining = k;
    for (int i = 0; i < n && prob != 0; ++i) {
      const bool take = (mask >> i & 1u) != 0;
      if (i == n - 1) {
        // The chain pins the last coin to the residual count.
        if (take != (remaining == 1)) prob = 0;
        break;
      }
      const rational take_mass =
          remaining > 0 ? p[i] * table[i + 1][remaining - 1] : rational(0);
      const rational stay_mass = (1 - p[i]) * table[i + 1][remaining];
      const rational denom = take_mass + stay_mass;
      if (denom == 0) {
        prob = 0;
        break;
      }
      prob *= take ? take_mass / denom : stay_mass / denom;
      if (take) --remaining;
    }
    if (prob != 0) out[mask] = prob;
  }
  return out;
}

}  // namespace privgraph
