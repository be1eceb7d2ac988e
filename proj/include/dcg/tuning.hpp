#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dcg/graph.hpp"
#include "dcg/mixing.hpp"
#include "dcg/problems.hpp"

namespace dcg {

struct GoldenResult {
  double best_param = 0.0;
  double best_score = 0.0;
  int evaluations = 0;
  bool budget_exhausted = false;
  std::vector<std::pair<double, double>> log;  // (param, score) in eval order
};

// Standard golden-section bracketing with ratio (sqrt(5)-1)/2; returns the
// midpoint of the final bracket. Deterministic.
GoldenResult golden_section(const std::function<double(double)>& score, double lo,
                            double hi, double tol_interval, int max_evals);

enum class Algo { dc_grad, vanilla_cg, diging_atc, ab_push_pull, abm, c_admm };

std::string algo_name(Algo a);
Algo parse_algo(const std::string& name);

struct TunedParams {
  double alpha = 0.0;  // step-size, or rho for c_admm
  double gamma = 0.0;  // abm momentum
  double score = 0.0;
};

// Score = iterations to reach tol_rse; non-convergent runs are penalized past
// max_iter by their final RSE. Throws tuning_error if nothing converges.
TunedParams tune_algorithm(Algo algo, const ProblemInstance& problem, const Graph& g,
                           const MixingMatrix& w, const BetaScheme& scheme,
                           const Eigen::MatrixXd& x0, double tol_rse, int max_iter,
                           int max_evals = 24, std::vector<std::pair<double, double>>* log = nullptr);

}  // namespace dcg
