#include "privgraph/laplacian.hpp"

#include <cmath>
#include <stdexcept>

#include "privgraph/errors.hpp"

namespace privgraph {

Eigen::MatrixXd laplacian(const graph& g) {
  const int n = g.n();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [id, w] : g.stored()) {
    auto [u, v] = edge_endpoints(id, n);
    l(u, v) -= w;
    l(v, u) -= w;
    l(u, u) += w;
    l(v, v) += w;
  }
  return l;
}

double zero_eigenvalue_threshold(double lambda_max) {
  return 1e-10 * lambda_max;
}

double spectral_norm_sym(const Eigen::MatrixXd& m, rng& r) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("matrix must be square");
  if (n == 0) return 0.0;

  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = r.uniform01() - 0.5;
  const double xnorm = x.norm();
  if (xnorm == 0.0) x[0] = 1.0; else x /= xnorm;

  const int cap = 10 * static_cast<int>(n) + 1000;
  double estimate = 0.0;
  bool have_prev = false;
  for (int it = 0; it < cap; ++it) {
    Eigen::VectorXd y = m * x;
    const double ynorm = y.norm();
    if (ynorm == 0.0) return 0.0;
    if (have_prev && std::abs(ynorm - estimate) <= 1e-9 * ynorm) return ynorm;
    estimate = ynorm;
    have_prev = true;
    x = y / ynorm;
  }
  throw convergence_error("power iteration hit its cap", estimate);
}

double spectral_norm_diff(const graph& a, const graph& b, rng& r) {
  if (a.n() != b.n())
    throw std::invalid_argument("spectral_norm_diff: vertex counts differ");
  return spectral_norm_sym(laplacian(a) - laplacian(b), r);
}

gap_result spectral_gap(const graph& g) {
  const Eigen::MatrixXd l = laplacian(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw internal_error("eigendecomposition failed");
  const Eigen::VectorXd ev = solver.eigenvalues();  // ascending
  const double lambda_max = ev[ev.size() - 1];
  const double threshold = zero_eigenvalue_threshold(std::max(lambda_max, 0.0));

  int zeros = 0;
  double gap = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] <= threshold) {
      ++zeros;
    } else if (gap == 0.0) {
      gap = ev[i];
    }
  }
  return {gap, zeros == 1};
}

}  // namespace privgraph
