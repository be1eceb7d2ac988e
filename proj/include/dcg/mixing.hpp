#pragma once

#include <optional>

#include <Eigen/Dense>

#include "dcg/graph.hpp"

namespace dcg {

// Doubly-stochastic mixing matrix compatible with a graph, plus its spectral
// gap lambda = rho(W - 11^T/N). Immutable after construction.
struct MixingMatrix {
  Eigen::MatrixXd w;
  double lambda;
};

// rho(W - 11^T/N).
double spectral_gap(const Eigen::MatrixXd& w);

// w_ij = 1 / (max{deg(i), deg(j)} + epsilon) for edges, diagonal fills the row.
MixingMatrix metropolis_hastings(const Graph& g, double epsilon = 1.0);

// W = I - L/tau. With no tau given, tau = max_i deg(i) + 1.
// Requires tau > lambda_max(L) / 2.
MixingMatrix laplacian_weights(const Graph& g, std::optional<double> tau = std::nullopt);

// Smallest k with lambda^k <= 1e-10 (so ||W^k - 11^T/N|| <= 1e-9 holds).
int predicted_consensus_steps(double lambda);

}  // namespace dcg
