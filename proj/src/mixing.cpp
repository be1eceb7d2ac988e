#include "dcg/mixing.hpp"

#include <cmath>
#include <stdexcept>

#include "dcg/linalg.hpp"

namespace dcg {

namespace {

void validate(const MixingMatrix& m, const Graph& g) {
  const int n = g.n_agents();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && !g.has_edge(i, j) && m.w(i, j) != 0.0)
        throw std::runtime_error("mixing: weight on a non-edge");
    }
    if (std::abs(m.w.row(i).sum() - 1.0) > 1e-12)
      throw std::runtime_error("mixing: row sum deviates from 1");
    if (std::abs(m.w.col(i).sum() - 1.0) > 1e-12)
      throw std::runtime_error("mixing: column sum deviates from 1");
  }
  if (m.lambda >= 1.0) throw std::runtime_error("mixing: spectral gap >= 1");
}

}  // namespace

double spectral_gap(const Eigen::MatrixXd& w) {
  const double n = static_cast<double>(w.rows());
  Eigen::MatrixXd m = w - Eigen::MatrixXd::Constant(w.rows(), w.cols(), 1.0 / n);
  return spectral_norm(m);
}

MixingMatrix metropolis_hastings(const Graph& g, double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("metropolis_hastings: epsilon must be positive");
  const int n = g.n_agents();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [i, j] : g.edges()) {
    double wij = 1.0 / (std::max(g.degree(i), g.degree(j)) + epsilon);
    w(i, j) = wij;
    w(j, i) = wij;
  }
  for (int i = 0; i < n; ++i) w(i, i) = 1.0 - w.row(i).sum();
  MixingMatrix m{std::move(w), 0.0};
  m.lambda = spectral_gap(m.w);
  validate(m, g);
  return m;
}

MixingMatrix laplacian_weights(const Graph& g, std::optional<double> tau) {
  const int n = g.n_agents();
  Eigen::MatrixXd l = g.laplacian();
  double lmax = largest_eigenvalue_psd(l);
  double t = tau ? *tau : static_cast<double>(g.max_degree()) + 1.0;
  if (t <= lmax / 2.0)
    throw std::invalid_argument("laplacian_weights: tau must exceed lambda_max(L)/2");
  MixingMatrix m{Eigen::MatrixXd::Identity(n, n) - l / t, 0.0};
  m.lambda = spectral_gap(m.w);
  validate(m, g);
  return m;
}

int predicted_consensus_steps(double lambda) {
  if (lambda <= 1e-10) return 1;
  return static_cast<int>(std::ceil(std::log(1e-10) / std::log(lambda)));
}

}  // namespace dcg
