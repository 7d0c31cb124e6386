#pragma once

#include <Eigen/Dense>

#include "privgraph/graph.hpp"
#include "privgraph/rng.hpp"

namespace privgraph {

// Dense combinatorial Laplacian L = D - A of the weighted graph.
Eigen::MatrixXd laplacian(const graph& g);

// Eigenvalues below zero_eigenvalue_threshold(lambda_max) are treated as
// exact zeros when classifying connectivity and inverting spectra.
double zero_eigenvalue_threshold(double lambda_max);

// Spectral norm of L(a) - L(b), estimated by power iteration with a random
// start drawn from r. Converges to relative tolerance 1e-9 with an iteration
// cap of 10*n + 1000; on non-convergence throws convergence_error carrying
// the best estimate so far. Deterministic for a fixed r state.
double spectral_norm_diff(const graph& a, const graph& b, rng& r);

// Same estimator on an arbitrary symmetric matrix.
double spectral_norm_sym(const Eigen::MatrixXd& m, rng& r);

struct gap_result {
  double value;     // smallest eigenvalue above the zero threshold, or 0
  bool connected;   // exactly one (near-)zero eigenvalue
};

// Algebraic connectivity report from a full symmetric eigendecomposition.
gap_result spectral_gap(const graph& g);

}  // namespace privgraph
