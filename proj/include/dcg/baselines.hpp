#pragma once

#include <Eigen/Dense>

#include "dcg/graph.hpp"
#include "dcg/mixing.hpp"
#include "dcg/problems.hpp"
#include "dcg/record.hpp"

namespace dcg {

// Gradient-tracking iterate block shared by DIGing-ATC, AB/Push-Pull (the
// doubly-stochastic CTA reduction), and ABm. y tracks the average gradient.
struct TrackingState {
  Eigen::MatrixXd x, y, g;
  Eigen::MatrixXd x_prev;  // ABm momentum memory
  int k = 0;
};

TrackingState init_tracking(const ProblemInstance& problem, const Eigen::MatrixXd& x0);

// ATC form: x+ = W(x - alpha y), y+ = W(y + g+ - g).
void diging_atc_step(TrackingState& st, const MixingMatrix& w, const Graph& g,
                     const ProblemInstance& problem, double alpha);

// CTA form: x+ = Wx - alpha y, y+ = Wy + g+ - g.
void ab_push_pull_step(TrackingState& st, const MixingMatrix& w, const Graph& g,
                       const ProblemInstance& problem, double alpha);

// CTA form with heavy-ball momentum gamma (x - x_prev) on the x update.
void abm_step(TrackingState& st, const MixingMatrix& w, const Graph& g,
              const ProblemInstance& problem, double alpha, double gamma);

// Decentralized consensus ADMM. LS loss only; primal solved in closed form.
struct AdmmState {
  Eigen::MatrixXd x, p;
  double rho = 1.0;
  std::vector<Eigen::LDLT<Eigen::MatrixXd>> primal_factor;
  int k = 0;
};

AdmmState init_admm(const ProblemInstance& problem, const Graph& g,
                    const Eigen::MatrixXd& x0, double rho);
void c_admm_step(AdmmState& st, const Graph& g, const ProblemInstance& problem);

RunRecord run_diging_atc(const ProblemInstance& problem, const Graph& g, const MixingMatrix& w,
                         double alpha, double tol_rse, int max_iter, const Eigen::MatrixXd& x0);
RunRecord run_ab_push_pull(const ProblemInstance& problem, const Graph& g, const MixingMatrix& w,
                           double alpha, double tol_rse, int max_iter, const Eigen::MatrixXd& x0);
RunRecord run_abm(const ProblemInstance& problem, const Graph& g, const MixingMatrix& w,
                  double alpha, double gamma, double tol_rse, int max_iter,
                  const Eigen::MatrixXd& x0);
RunRecord run_c_admm(const ProblemInstance& problem, const Graph& g, double rho,
                     double tol_rse, int max_iter, const Eigen::MatrixXd& x0);

}  // namespace dcg
