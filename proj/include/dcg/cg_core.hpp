#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace dcg {

// Conjugate-update parameter rule. The clamp restricts the base value to
// [0, cap]; pr_plus is the max{0, beta_PR} hybrid.
struct BetaScheme {
  enum class Kind { hestenes_stiefel, fletcher_reeves, polak_ribiere, pr_plus };
  Kind kind = Kind::fletcher_reeves;
  bool clamp = false;
  double cap = 0.0;

  static BetaScheme hestenes_stiefel() { return {Kind::hestenes_stiefel}; }
  static BetaScheme fletcher_reeves() { return {Kind::fletcher_reeves}; }
  static BetaScheme polak_ribiere() { return {Kind::polak_ribiere}; }
  static BetaScheme pr_plus() { return {Kind::pr_plus}; }
  static BetaScheme clamped(Kind base, double cap) { return {base, true, cap}; }

  std::string name() const;
  static BetaScheme parse(const std::string& name);
};

// Degenerate denominators evaluate to 0 (the 0/0 := 0 rule).
double beta(const BetaScheme& scheme, const Eigen::VectorXd& g_next,
            const Eigen::VectorXd& g_prev, const Eigen::VectorXd& s_prev);

using ValueGrad =
    std::function<std::pair<double, Eigen::VectorXd>(const Eigen::VectorXd&)>;
using HessVec = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct StepRule {
  enum class Kind { fixed, exact_quadratic, backtracking };
  Kind kind = Kind::exact_quadratic;
  double alpha = 1.0;  // fixed step / initial backtracking step

  static StepRule fixed(double alpha) { return {Kind::fixed, alpha}; }
  static StepRule exact_quadratic() { return {Kind::exact_quadratic}; }
  static StepRule backtracking(double alpha0 = 1.0) { return {Kind::backtracking, alpha0}; }
};

struct CgResult {
  Eigen::VectorXd x;
  int iterations = 0;
  bool converged = false;
  std::vector<Eigen::VectorXd> iterates;  // includes x0
  std::vector<double> grad_norms;
};

// Centralized nonlinear conjugate gradient. hess_vec is required by the
// exact-quadratic step rule and ignored otherwise. Stops at ||g||_2 <= tol.
CgResult cg_minimize(const ValueGrad& f, const HessVec& hess_vec,
                     const Eigen::VectorXd& x0, const BetaScheme& scheme,
                     const StepRule& step, double tol, int max_iter);

}  // namespace dcg
