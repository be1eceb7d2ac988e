#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dcg/cg_core.hpp"

namespace dcg {

enum class LossKind { squared, huber };

// Per-agent differentiable objective: f_i(x) = ||C x - y||^2 for squared loss,
// or the component-wise Huber penalty of the residual C x - y.
struct AgentObjective {
  Eigen::MatrixXd c;
  Eigen::VectorXd y;
  LossKind loss = LossKind::squared;
  double xi = 1.0;

  int dim() const { return static_cast<int>(c.cols()); }
  std::pair<double, Eigen::VectorXd> eval(const Eigen::VectorXd& x) const;
  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;

  // Gradient-Lipschitz bound: 2 lambda_max(C^T C) for squared loss,
  // lambda_max(C^T C) for Huber.
  double lipschitz() const;
};

struct ProblemInstance {
  std::vector<AgentObjective> agents;
  Eigen::VectorXd x_star;
  double f_star = 0.0;
  LossKind loss = LossKind::squared;
  double xi = 1.0;
  std::uint64_t seed = 0;
  int resample_count = 0;  // sub-seed bumps taken during generation

  int n_agents() const { return static_cast<int>(agents.size()); }
  int dim() const { return static_cast<int>(x_star.size()); }

  // f(x) = (1/N) sum_i f_i(x) and its gradient.
  std::pair<double, Eigen::VectorXd> aggregate_eval(const Eigen::VectorXd& x) const;
  ValueGrad aggregate_oracle() const;
  // Hessian-vector product of the aggregate; exact for squared loss.
  HessVec aggregate_hess_vec() const;

  double lipschitz() const;  // max_i L_i
};

ProblemInstance generate_ls_instance(int n_agents = 50, int n = 10, int m_lo = 5,
                                     int m_hi = 30, std::uint64_t seed = 0);

struct HuberInstance {
  ProblemInstance problem;
  Eigen::MatrixXd x_init;  // N x n, each row in the l1-zone of its agent
};

HuberInstance generate_huber_instance(int n_agents = 50, int n = 10, double xi = 1.0,
                                      std::uint64_t seed = 0);

// Replayable flat text fixture.
void save_fixture(std::ostream& os, const ProblemInstance& p);
ProblemInstance load_fixture(std::istream& is);

}  // namespace dcg
