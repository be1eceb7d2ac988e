#pragma once

#include <Eigen/Dense>

#include "dcg/cg_core.hpp"
#include "dcg/graph.hpp"
#include "dcg/mixing.hpp"
#include "dcg/problems.hpp"
#include "dcg/record.hpp"

namespace dcg {

// Stacked agent iterates, one row per agent. s and z start as the negative
// local gradient; beta holds the parameters applied on the last transition.
struct SwarmState {
  Eigen::MatrixXd x, s, z, g;
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  int k = 0;
};

SwarmState init_swarm(const ProblemInstance& problem, const Eigen::MatrixXd& x0,
                      const Eigen::VectorXd& alphas);

// Graph-compatible mixing sum over {i} and neighbors, ascending id order, so
// results are independent of agent processing order.
Eigen::MatrixXd mix(const MixingMatrix& w, const Graph& g, const Eigen::MatrixXd& u);

// One synchronous DC-Grad round (two-phase exchange).
void dcgrad_step(SwarmState& swarm, const MixingMatrix& w, const Graph& g,
                 const ProblemInstance& problem, const BetaScheme& scheme);

// Average-consensus distributed CG without the direction tracker; kept as the
// fixed-point counterexample.
void vanilla_distributed_cg_step(SwarmState& swarm, const MixingMatrix& w, const Graph& g,
                                 const ProblemInstance& problem, const BetaScheme& scheme);

RunRecord run_dcgrad(const ProblemInstance& problem, const Graph& g, const MixingMatrix& w,
                     const Eigen::VectorXd& alphas, const BetaScheme& scheme,
                     double tol_rse, int max_iter, const Eigen::MatrixXd& x0,
                     IterateTrace* trace = nullptr);

RunRecord run_vanilla_cg(const ProblemInstance& problem, const Graph& g,
                         const MixingMatrix& w, const Eigen::VectorXd& alphas,
                         const BetaScheme& scheme, double tol_rse, int max_iter,
                         const Eigen::MatrixXd& x0);

// max / min over agents of ||x_i - x_star|| / ||x_star||.
std::pair<double, double> rse_range(const Eigen::MatrixXd& x, const Eigen::VectorXd& x_star);

}  // namespace dcg
