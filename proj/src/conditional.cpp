#include "privgraph/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "privgraph/errors.hpp"

namespace privgraph {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int64_t kMaxTableEntries = 2'000'000'000;
constexpr int kMaxEnumerationSize = 22;
}  // namespace

double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;  // covers a == b == -inf
  return a + std::log1p(std::exp(b - a));
}

bernoulli_profile bernoulli_profile::from_probabilities(
    const std::vector<double>& p) {
  std::vector<double> lo(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0) || p[i] >= 1.0)
      throw std::invalid_argument("coin probability must lie in [0, 1); got " +
                                  std::to_string(p[i]) + " at index " +
                                  std::to_string(i));
    lo[i] = p[i] == 0.0 ? kNegInf : std::log(p[i]) - std::log1p(-p[i]);
  }
  return from_log_odds(lo);
}

bernoulli_profile bernoulli_profile::from_log_odds(
    const std::vector<double>& lo) {
  if (lo.empty()) throw std::invalid_argument("profile must be nonempty");
  bernoulli_profile out;
  out.log_odds_ = lo;
  out.log_p_.resize(lo.size());
  out.log_q_.resize(lo.size());
  for (size_t i = 0; i < lo.size(); ++i) {
    const double l = lo[i];
    if (std::isnan(l) || l == std::numeric_limits<double>::infinity())
      throw std::invalid_argument(
          "log-odds must exclude +inf (probability-1 coins are not "
          "conditionable)");
    if (l >= 0) {
      out.log_p_[i] = -std::log1p(std::exp(-l));
      out.log_q_[i] = out.log_p_[i] - l;
    } else {
      out.log_q_[i] = l == kNegInf ? 0.0 : -std::log1p(std::exp(l));
      out.log_p_[i] = l + out.log_q_[i];
    }
  }
  return out;
}

double bernoulli_profile::probability(int i) const {
  return std::exp(log_p_[i]);
}

suffix_count_table::suffix_count_table(const bernoulli_profile& profile,
                                       int k)
    : n_(profile.size()), k_(k) {
  if (k < 0 || k > n_)
    throw std::invalid_argument("target count must lie in [0, N]");
  const int64_t entries =
      (static_cast<int64_t>(n_) + 1) * (static_cast<int64_t>(k_) + 1);
  if (entries > kMaxTableEntries)
    throw capacity_error(
        "suffix table would need " + std::to_string(entries) +
        " entries; reduce the target count or the profile size");

  data_.assign(static_cast<size_t>(entries), kNegInf);
  const int stride = k_ + 1;
  // Empty suffix: zero successes with certainty.
  data_[static_cast<size_t>(n_) * stride] = 0.0;

  const double* lp = profile.log_p().data();
  const double* lq = profile.log_q().data();
  for (int i = n_ - 1; i >= 0; --i) {
    double* row = data_.data() + static_cast<size_t>(i) * stride;
    const double* next = row + stride;
    const int qmax = std::min(k_, n_ - i);
    for (int q = 0; q <= qmax; ++q) {
      const double stay = lq[i] + next[q];
      const double take = q > 0 ? lp[i] + next[q - 1] : kNegInf;
      row[q] = log_add_exp(take, stay);
    }
  }
}

double suffix_count_table::log_suffix(int i, int q) const {
  if (i < 0 || i > n_ || q < 0 || q > k_)
    throw std::invalid_argument("suffix table index out of range");
  return data_[static_cast<size_t>(i) * (k_ + 1) + q];
}

double conditional_marginal(const bernoulli_profile& profile,
                            const suffix_count_table& table, int i,
                            int remaining) {
  if (i < 0 || i >= profile.size())
    throw std::invalid_argument("coin index out of range");
  if (remaining < 0 || remaining > table.max_count())
    throw std::invalid_argument("remaining count out of range");
  const double take = remaining > 0
                          ? profile.log_p(i) + table.log_suffix(i + 1, remaining - 1)
                          : kNegInf;
  const double stay = profile.log_q(i) + table.log_suffix(i + 1, remaining);
  if (take == kNegInf && stay == kNegInf)
    throw internal_error("conditioning reached an impossible state");
  if (stay == kNegInf) return 1.0;
  if (take == kNegInf) return 0.0;
  return std::exp(take - log_add_exp(take, stay));
}

std::vector<int> sample_fixed_count(const bernoulli_profile& profile, int k,
                                    rng& r) {
  suffix_count_table table(profile, k);
  return sample_fixed_count(profile, table, k, r);
}

std::vector<int> sample_fixed_count(const bernoulli_profile& profile,
                                    const suffix_count_table& table, int k,
                                    rng& r) {
  const int n = profile.size();
  if (table.size_n() != n)
    throw std::invalid_argument("table was built for a different profile size");
  if (k < 0 || k > n || k > table.max_count())
    throw std::invalid_argument("target count must lie in [0, min(N, table max)]");
  if (table.log_suffix(0, k) == kNegInf)
    throw std::invalid_argument(
        "target count has probability zero under this profile");

  std::vector<int> chosen;
  chosen.reserve(k);
  int remaining = k;
  for (int i = 0; i < n - 1; ++i) {
    const double m = conditional_marginal(profile, table, i, remaining);
    if (r.uniform01() < m) {
      chosen.push_back(i);
      --remaining;
    }
  }
  // The residual count pins the last coin.
  if (remaining < 0 || remaining > 1)
    throw internal_error("residual count escaped {0, 1}");
  if (remaining == 1) chosen.push_back(n - 1);
  if (static_cast<int>(chosen.size()) != k)
    throw internal_error("sample does not have the requested count");
  return chosen;
}

std::map<uint32_t, double> enumerate_conditional(
    const bernoulli_profile& profile, int k) {
  const int n = profile.size();
  if (n > kMaxEnumerationSize)
    throw capacity_error("enumeration is limited to 22 coins");
  if (k < 0 || k > n)
    throw std::invalid_argument("target count must lie in [0, N]");

  std::vector<uint32_t> masks;
  std::vector<double> logw;
  const uint32_t full = n == 32 ? 0xffffffffu : ((1u << n) - 1);
  uint32_t mask = k == 0 ? 0u : (1u << k) - 1;
  while (true) {
    double lw = 0;
    for (int i = 0; i < n; ++i)
      lw += (mask >> i & 1u) ? profile.log_p(i) : profile.log_q(i);
    if (lw != kNegInf) {
      masks.push_back(mask);
      logw.push_back(lw);
    }
    if (k == 0 || mask == 0) break;
    // Gosper's hack: next bitmask with k set bits.
    const uint32_t c = mask & (0u - mask);
    const uint32_t rr = mask + c;
    mask = (((mask ^ rr) >> 2) / c) | rr;
    if (mask > full) break;
  }

  if (masks.empty())
    throw std::invalid_argument(
        "target count has probability zero under this profile");

  const double lmax = *std::max_element(logw.begin(), logw.end());
  double sum = 0;
  for (double lw : logw) sum += std::exp(lw - lmax);
  const double logz = lmax + std::log(sum);

  std::map<uint32_t, double> out;
  for (size_t j = 0; j < masks.size(); ++j)
    out[masks[j]] = std::exp(logw[j] - logz);
  return out;
}

}  // namespace privgraph
