#include "dcg/linalg.hpp"

#include <cmath>
#include <random>

namespace dcg {

double spectral_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  const Eigen::Index n = a.cols();
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = unif(rng);
  double nv = v.norm();
  if (nv == 0.0) return 0.0;
  v /= nv;

  double sigma = 0.0;
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd av = a * v;
    double sigma_new = av.norm();
    if (sigma_new == 0.0) return 0.0;
    Eigen::VectorXd w = a.transpose() * av;
    double nw = w.norm();
    if (nw == 0.0) return sigma_new;
    v = w / nw;
    if (std::abs(sigma_new - sigma) <= 1e-12 * std::max(1.0, sigma_new)) {
      return sigma_new;
    }
    sigma = sigma_new;
  }
  return sigma;
}

double largest_eigenvalue_psd(const Eigen::MatrixXd& a) {
  // For symmetric PSD matrices the spectral norm equals the largest eigenvalue.
  return spectral_norm(a);
}

Eigen::MatrixXd row_mean(const Eigen::MatrixXd& b) {
  Eigen::RowVectorXd mean = b.colwise().mean();
  return Eigen::VectorXd::Ones(b.rows()) * mean;
}

Eigen::MatrixXd tilde(const Eigen::MatrixXd& b) { return b - row_mean(b); }

}  // namespace dcg
