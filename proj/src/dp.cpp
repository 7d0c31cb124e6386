#include "privgraph/dp.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "privgraph/conditional.hpp"
#include "privgraph/errors.hpp"

namespace privgraph {

namespace {

void check_budget(const privacy_budget& b) {
  if (!(b.epsilon >= 0) || !std::isfinite(b.epsilon))
    throw std::invalid_argument("epsilon must be finite and non-negative");
  if (!(b.delta >= 0) || b.delta > 1)
    throw std::invalid_argument("delta must lie in [0, 1]");
}

}  // namespace

privacy_budget compose_sequential(const privacy_budget& a,
                                  const privacy_budget& b) {
  check_budget(a);
  check_budget(b);
  return {a.epsilon + b.epsilon, a.delta + b.delta};
}

privacy_budget compose_advanced(double epsilon, double delta, int64_t k,
                                double delta_prime) {
  check_budget({epsilon, delta});
  if (k < 0) throw std::invalid_argument("fold count must be non-negative");
  if (!(delta_prime > 0) || delta_prime >= 1)
    throw std::invalid_argument("delta_prime must lie in (0, 1)");
  const double kd = static_cast<double>(k);
  const double eps_out =
      std::sqrt(2.0 * kd * std::log(1.0 / delta_prime)) * epsilon +
      kd * epsilon * (std::exp(epsilon) - 1.0);
  return {eps_out, kd * delta + delta_prime};
}

void budget_ledger::charge(const std::string& label,
                           const privacy_budget& b) {
  check_budget(b);
  entries_.emplace_back(label, b);
  if (cap_ && over_cap())
    std::cerr << "warning: privacy ledger exceeded its cap after charge '"
              << label << "'\n";
}

privacy_budget budget_ledger::total() const {
  privacy_budget t;
  for (const auto& [label, b] : entries_) t = compose_sequential(t, b);
  return t;
}

bool budget_ledger::over_cap() const {
  if (!cap_) return false;
  const privacy_budget t = total();
  return t.epsilon > cap_->epsilon || t.delta > cap_->delta;
}

double laplace_noise(double b, rng& r) {
  if (!(b > 0) || !std::isfinite(b))
    throw std::invalid_argument("laplace scale must be positive and finite");
  const double u = r.uniform01();
  const double c = u - 0.5;
  const double s = c < 0 ? -1.0 : (c > 0 ? 1.0 : 0.0);
  return -b * s * std::log1p(-2.0 * std::abs(c));
}

std::vector<edge_id> topology_sample(const graph& g, int64_t k, double epsilon,
                                     rng& r, budget_ledger* ledger) {
  if (!(epsilon > 0) || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon must be positive and finite");
  const int64_t total = g.slots();
  if (k < 0 || k > total)
    throw std::invalid_argument("requested subset size must lie in [0, slots]");
  if (total > (int64_t(1) << 31))
    throw capacity_error("slot space too large for topology sampling");
  if (ledger) ledger->charge("topology_sample", {2.0 * epsilon, 0.0});
  if (total == 0) return {};

  std::vector<double> log_odds(static_cast<size_t>(total), 0.0);
  for (const auto& [id, w] : g.stored())
    log_odds[static_cast<size_t>(id)] = epsilon * w;
  const auto profile = bernoulli_profile::from_log_odds(log_odds);
  const auto chosen = sample_fixed_count(profile, static_cast<int>(k), r);

  std::vector<edge_id> out;
  out.reserve(chosen.size());
  for (int i : chosen) out.push_back(i);
  return out;
}

}  // namespace privgraph
