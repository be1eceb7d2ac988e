#pragma once

#include <Eigen/Dense>

namespace dcg {

// Spectral norm via power iteration on A^T A. Deterministic starting vector.
// Converges to relative tolerance 1e-12, capped at 10000 iterations.
double spectral_norm(const Eigen::MatrixXd& a);

// Largest eigenvalue of a symmetric PSD matrix (power iteration).
double largest_eigenvalue_psd(const Eigen::MatrixXd& a);

// Row-mean matrix (1/N) 11^T B.
Eigen::MatrixXd row_mean(const Eigen::MatrixXd& b);

// Consensus violation B - (1/N) 11^T B.
Eigen::MatrixXd tilde(const Eigen::MatrixXd& b);

}  // namespace dcg
