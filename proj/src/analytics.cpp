#include "privgraph/analytics.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "privgraph/errors.hpp"
#include "privgraph/spectral_release.hpp"

namespace privgraph {

namespace {

void require_connected(const graph& g, const char* who) {
  if (!is_connected(g)) {
    throw std::invalid_argument(std::string(who) + ": graph must be connected");
  }
}

// Whether the released-spectrum utility argument applies at this input:
// the spectral gap must dominate max_degree * ln(n)^2 / epsilon.
bool utility_precondition(const graph& g, double epsilon) {
  const int n = g.n();
  if (n < 2) return true;
  const gap_result gap = spectral_gap(g);
  if (!gap.connected || gap.value <= 0.0) return false;
  const double log_n = std::log(static_cast<double>(n));
  const double lhs = static_cast<double>(g.max_unweighted_degree()) * log_n *
                     log_n / epsilon;
  return lhs / gap.value < 0.5;
}

// Shared first stage of the private estimators: release at epsilon/8 per
// stage and repair connectivity with a light complete-graph overlay.
graph released_and_repaired(const graph& g, double epsilon, double beta,
                            uint64_t seed, budget_ledger* ledger,
                            bool* repaired) {
  const spectral_release_result rel =
      spectral_release(g, epsilon / 8.0, beta, seed, ledger);
  *repaired = !is_connected(rel.synthetic);
  if (!*repaired) return rel.synthetic;
  return graph_sum(rel.synthetic,
                   complete_graph(g.n(), 1.0 / static_cast<double>(g.n())));
}

}  // namespace

pseudoinverse_result pseudoinverse(const Eigen::MatrixXd& sym) {
  if (sym.rows() != sym.cols()) {
    throw std::invalid_argument("pseudoinverse: matrix must be square");
  }
  if (!sym.isApprox(sym.transpose(), 1e-12)) {
    throw std::invalid_argument("pseudoinverse: matrix must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw convergence_error("pseudoinverse: eigendecomposition failed", 0.0);
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double lambda_max = ev.size() == 0 ? 0.0 : ev.cwiseAbs().maxCoeff();
  const double threshold = zero_eigenvalue_threshold(lambda_max);

  pseudoinverse_result out;
  out.zero_threshold = threshold;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::fabs(ev[i]) > threshold) {
      inv[i] = 1.0 / ev[i];
      ++out.rank;
    }
  }
  out.matrix = solver.eigenvectors() * inv.asDiagonal() *
               solver.eigenvectors().transpose();
  return out;
}

double effective_resistance(const graph& g, int u, int v) {
  if (u == v) {
    throw std::invalid_argument("effective_resistance: endpoints must differ");
  }
  if (u < 0 || v < 0 || u >= g.n() || v >= g.n()) {
    throw std::invalid_argument("effective_resistance: vertex out of range");
  }
  require_connected(g, "effective_resistance");
  const Eigen::MatrixXd pinv = pseudoinverse(laplacian(g)).matrix;
  return pinv(u, u) + pinv(v, v) - 2.0 * pinv(u, v);
}

Eigen::MatrixXd all_pairs_resistance(const graph& g) {
  require_connected(g, "all_pairs_resistance");
  const int n = g.n();
  const Eigen::MatrixXd pinv = pseudoinverse(laplacian(g)).matrix;
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double val = pinv(u, u) + pinv(v, v) - 2.0 * pinv(u, v);
      r(u, v) = val;
      r(v, u) = val;
    }
  }
  return r;
}

double resistance_sensitivity_demo(int n) {
  if (n < 4) {
    throw std::invalid_argument("resistance_sensitivity_demo: n must be >= 4");
  }
  const graph full = complete_graph(n, 1.0);
  graph minus = complete_graph(n, 1.0);
  minus.set_weight(0, 1, 0.0);
  return std::fabs(effective_resistance(full, 0, 1) -
                   effective_resistance(minus, 0, 1));
}

std::vector<double> commute_times_exact(const graph& g) {
  require_connected(g, "commute_times_exact");
  const int n = g.n();
  const double total = g.weight_l1();
  const Eigen::MatrixXd r = all_pairs_resistance(g);
  std::vector<double> out(static_cast<size_t>(g.slots()), 0.0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      out[static_cast<size_t>(edge_index(u, v, n))] = 2.0 * total * r(u, v);
    }
  }
  return out;
}

cover_time_bounds_result cover_time_bounds(const std::vector<double>& commute,
                                           int n) {
  if (commute.empty()) {
    throw std::invalid_argument("cover_time_bounds: commute vector is empty");
  }
  if (n < 2) {
    throw std::invalid_argument("cover_time_bounds: n must be >= 2");
  }
  double max_c = commute[0];
  for (double c : commute) max_c = std::max(max_c, c);
  cover_time_bounds_result out;
  out.lower = max_c / 2.0;
  out.upper = max_c * (1.0 + std::log(static_cast<double>(n)));
  return out;
}

private_commute_result private_commute_times(const graph& g, double epsilon,
                                             double beta, uint64_t seed,
                                             budget_ledger* ledger) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("private_commute_times: epsilon must be positive");
  }
  require_connected(g, "private_commute_times");

  budget_ledger local;
  budget_ledger& led = ledger ? *ledger : local;

  private_commute_result out;
  out.budget = privacy_budget{epsilon, 0.0};
  out.utility_precondition_met = utility_precondition(g, epsilon);
  out.released = released_and_repaired(g, epsilon, beta, derive_seed(seed, 0),
                                       &led, &out.repaired);

  rng weight_rng(derive_seed(seed, 1));
  out.total_weight_estimate =
      g.weight_l1() + laplace_noise(2.0 / epsilon, weight_rng);
  led.charge("total_weight", privacy_budget{epsilon / 2.0, 0.0});

  const int n = g.n();
  const Eigen::MatrixXd pinv = pseudoinverse(laplacian(out.released)).matrix;
  out.estimates.assign(static_cast<size_t>(g.slots()), 0.0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double resistance = pinv(u, u) + pinv(v, v) - 2.0 * pinv(u, v);
      out.estimates[static_cast<size_t>(edge_index(u, v, n))] =
          2.0 * out.total_weight_estimate * resistance;
    }
  }
  return out;
}

hitting_vector hitting_times_exact(const graph& g, int t) {
  if (t < 0 || t >= g.n()) {
    throw std::invalid_argument("hitting_times_exact: target out of range");
  }
  require_connected(g, "hitting_times_exact");
  const int n = g.n();

  Eigen::VectorXd dt(n);
  const std::vector<double> degrees = g.weighted_degrees();
  for (int i = 0; i < n; ++i) dt[i] = degrees[static_cast<size_t>(i)];
  dt[t] -= 2.0 * g.weight_l1();

  const Eigen::MatrixXd pinv = pseudoinverse(laplacian(g)).matrix;
  Eigen::VectorXd h = pinv * dt;
  h.array() -= h[t];

  hitting_vector out;
  out.target = t;
  out.values.assign(h.data(), h.data() + n);
  out.values[static_cast<size_t>(t)] = 0.0;
  return out;
}

Eigen::MatrixXd hitting_times_tetali(const graph& g) {
  require_connected(g, "hitting_times_tetali");
  const int n = g.n();
  const double total = g.weight_l1();
  const std::vector<double> degrees = g.weighted_degrees();
  const Eigen::MatrixXd r = all_pairs_resistance(g);

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      double correction = 0.0;
      for (int i = 0; i < n; ++i) {
        correction +=
            degrees[static_cast<size_t>(i)] / 2.0 * (r(v, i) - r(i, u));
      }
      h(u, v) = total * r(u, v) + correction;
    }
  }
  return h;
}

private_hitting_result private_hitting_times(const graph& g, double epsilon,
                                             double beta, uint64_t seed,
                                             budget_ledger* ledger) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("private_hitting_times: epsilon must be positive");
  }
  require_connected(g, "private_hitting_times");

  budget_ledger local;
  budget_ledger& led = ledger ? *ledger : local;

  private_hitting_result out;
  out.budget = privacy_budget{epsilon, 0.0};
  out.utility_precondition_met = utility_precondition(g, epsilon);
  out.released = released_and_repaired(g, epsilon, beta, derive_seed(seed, 0),
                                       &led, &out.repaired);

  const int n = g.n();
  rng degree_rng(derive_seed(seed, 1));
  const std::vector<double> degrees = g.weighted_degrees();
  out.noisy_degrees.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.noisy_degrees[static_cast<size_t>(i)] =
        degrees[static_cast<size_t>(i)] + laplace_noise(4.0 / epsilon, degree_rng);
  }
  led.charge("degree_noise", privacy_budget{epsilon / 2.0, 0.0});

  double noisy_sum = 0.0;
  for (double d : out.noisy_degrees) noisy_sum += d;

  const Eigen::MatrixXd pinv = pseudoinverse(laplacian(out.released)).matrix;
  out.vectors.reserve(static_cast<size_t>(n));
  Eigen::VectorXd dt(n);
  for (int t = 0; t < n; ++t) {
    for (int i = 0; i < n; ++i) dt[i] = out.noisy_degrees[static_cast<size_t>(i)];
    dt[t] -= noisy_sum;
    Eigen::VectorXd h = pinv * dt;
    h.array() -= h[t];

    hitting_vector hv;
    hv.target = t;
    hv.values.assign(h.data(), h.data() + n);
    hv.values[static_cast<size_t>(t)] = 0.0;
    out.vectors.push_back(std::move(hv));
  }
  return out;
}

}  // namespace privgraph
