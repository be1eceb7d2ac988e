#include "dcg/cg_core.hpp"

#include <cmath>
#include <stdexcept>

#include "dcg/errors.hpp"

namespace dcg {

std::string BetaScheme::name() const {
  std::string base;
  switch (kind) {
    case Kind::hestenes_stiefel: base = "hs"; break;
    case Kind::fletcher_reeves: base = "fr"; break;
    case Kind::polak_ribiere: base = "pr"; break;
    case Kind::pr_plus: base = "pr_plus"; break;
  }
  if (clamp) base += "_clamped_" + std::to_string(cap);
  return base;
}

BetaScheme BetaScheme::parse(const std::string& name) {
  if (name == "hs") return hestenes_stiefel();
  if (name == "fr") return fletcher_reeves();
  if (name == "pr") return polak_ribiere();
  if (name == "pr_plus") return pr_plus();
  throw std::invalid_argument("unknown beta scheme: " + name);
}

double beta(const BetaScheme& scheme, const Eigen::VectorXd& g_next,
            const Eigen::VectorXd& g_prev, const Eigen::VectorXd& s_prev) {
  double value = 0.0;
  switch (scheme.kind) {
    case BetaScheme::Kind::hestenes_stiefel: {
      Eigen::VectorXd dg = g_next - g_prev;
      double den = dg.dot(s_prev);
      value = std::abs(den) < 1e-300 ? 0.0 : dg.dot(g_next) / den;
      break;
    }
    case BetaScheme::Kind::fletcher_reeves: {
      double den = g_prev.squaredNorm();
      value = den < 1e-300 ? 0.0 : g_next.squaredNorm() / den;
      break;
    }
    case BetaScheme::Kind::polak_ribiere:
    case BetaScheme::Kind::pr_plus: {
      double den = g_prev.squaredNorm();
      value = den < 1e-300 ? 0.0 : (g_next - g_prev).dot(g_next) / den;
      if (scheme.kind == BetaScheme::Kind::pr_plus) value = std::max(0.0, value);
      break;
    }
  }
  if (scheme.clamp) value = std::min(std::max(0.0, value), scheme.cap);
  return value;
}

namespace {

double line_search(const ValueGrad& f, const HessVec& hess_vec, const StepRule& step,
                   const Eigen::VectorXd& x, double fx, const Eigen::VectorXd& g,
                   const Eigen::VectorXd& s, int k) {
  switch (step.kind) {
    case StepRule::Kind::fixed:
      return step.alpha;
    case StepRule::Kind::exact_quadratic: {
      if (!hess_vec) throw std::invalid_argument("cg_minimize: exact-quadratic rule needs hess_vec");
      Eigen::VectorXd hs = hess_vec(s);
      double den = s.dot(hs);
      if (den <= 0.0) return 0.0;
      return -g.dot(s) / den;
    }
    case StepRule::Kind::backtracking: {
      const double c = 1e-4;
      double gs = g.dot(s);
      double alpha = step.alpha;
      for (int t = 0; t < 60; ++t) {
        auto [fv, gv] = f(x + alpha * s);
        (void)gv;
        if (std::isfinite(fv) && fv <= fx + c * alpha * gs) return alpha;
        alpha *= 0.5;
      }
      return alpha;
    }
  }
  return step.alpha;
}

}  // namespace

CgResult cg_minimize(const ValueGrad& f, const HessVec& hess_vec,
                     const Eigen::VectorXd& x0, const BetaScheme& scheme,
                     const StepRule& step, double tol, int max_iter) {
  if (tol <= 0.0) throw std::invalid_argument("cg_minimize: tol must be positive");

  CgResult res;
  Eigen::VectorXd x = x0;
  auto [fx, g] = f(x);
  if (!std::isfinite(fx) || !g.allFinite())
    throw divergence_error("cg_minimize: non-finite objective at start", 0);

  Eigen::VectorXd s = -g;
  res.iterates.push_back(x);
  res.grad_norms.push_back(g.norm());

  for (int k = 0; k < max_iter; ++k) {
    if (g.norm() <= tol) {
      res.converged = true;
      break;
    }
    // Restart safeguard: keep s a descent direction.
    if (s.dot(g) >= 0.0) s = -g;

    double alpha = line_search(f, hess_vec, step, x, fx, g, s, k);
    x += alpha * s;
    auto [fx_new, g_new] = f(x);
    if (!std::isfinite(fx_new) || !g_new.allFinite())
      throw divergence_error("cg_minimize: non-finite objective", k + 1);

    double b = beta(scheme, g_new, g, s);
    s = -g_new + b * s;
    fx = fx_new;
    g = g_new;
    ++res.iterations;
    res.iterates.push_back(x);
    res.grad_norms.push_back(g.norm());
  }
  if (g.norm() <= tol) res.converged = true;
  res.x = x;
  return res;
}

}  // namespace dcg
