#include "dcg/baselines.hpp"

#include <limits>
#include <stdexcept>

#include "dcg/dcgrad.hpp"
#include "dcg/errors.hpp"

namespace dcg {

namespace {

Eigen::MatrixXd local_gradients(const ProblemInstance& problem, const Eigen::MatrixXd& x) {
  Eigen::MatrixXd g(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i)
    g.row(i) = problem.agents[i].gradient(x.row(i).transpose()).transpose();
  return g;
}

void check_finite(const Eigen::MatrixXd& m, const char* what, int k) {
  if (!m.allFinite()) throw divergence_error(std::string(what) + ": non-finite iterate", k);
}

}  // namespace

TrackingState init_tracking(const ProblemInstance& problem, const Eigen::MatrixXd& x0) {
  TrackingState st;
  st.x = x0;
  st.x_prev = x0;
  st.g = local_gradients(problem, x0);
  st.y = st.g;
  return st;
}

void diging_atc_step(TrackingState& st, const MixingMatrix& w, const Graph& g,
                     const ProblemInstance& problem, double alpha) {
  Eigen::MatrixXd x_next = mix(w, g, st.x - alpha * st.y);
  check_finite(x_next, "diging_atc_step", st.k + 1);
  Eigen::MatrixXd g_next = local_gradients(problem, x_next);
  Eigen::MatrixXd y_next = mix(w, g, st.y + g_next - st.g);
  st.x_prev = std::move(st.x);
  st.x = std::move(x_next);
  st.g = std::move(g_next);
  st.y = std::move(y_next);
  ++st.k;
}

void ab_push_pull_step(TrackingState& st, const MixingMatrix& w, const Graph& g,
                       const ProblemInstance& problem, double alpha) {
  Eigen::MatrixXd x_next = mix(w, g, st.x) - alpha * st.y;
  check_finite(x_next, "ab_push_pull_step", st.k + 1);
  Eigen::MatrixXd g_next = local_gradients(problem, x_next);
  Eigen::MatrixXd y_next = mix(w, g, st.y) + g_next - st.g;
  st.x_prev = std::move(st.x);
  st.x = std::move(x_next);
  st.g = std::move(g_next);
  st.y = std::move(y_next);
  ++st.k;
}

void abm_step(TrackingState& st, const MixingMatrix& w, const Graph& g,
              const ProblemInstance& problem, double alpha, double gamma) {
  if (gamma < 0.0 || gamma >= 1.0)
    throw std::invalid_argument("abm_step: momentum must be in [0, 1)");
  Eigen::MatrixXd x_next = mix(w, g, st.x) - alpha * st.y + gamma * (st.x - st.x_prev);
  check_finite(x_next, "abm_step", st.k + 1);
  Eigen::MatrixXd g_next = local_gradients(problem, x_next);
  Eigen::MatrixXd y_next = mix(w, g, st.y) + g_next - st.g;
  st.x_prev = std::move(st.x);
  st.x = std::move(x_next);
  st.g = std::move(g_next);
  st.y = std::move(y_next);
  ++st.k;
}

AdmmState init_admm(const ProblemInstance& problem, const Graph& g,
                    const Eigen::MatrixXd& x0, double rho) {
  if (problem.loss != LossKind::squared)
    throw unsupported_loss_error("c_admm: closed-form primal requires the squared loss");
  if (rho <= 0.0) throw std::invalid_argument("c_admm: rho must be positive");
  AdmmState st;
  st.x = x0;
  st.p = Eigen::MatrixXd::Zero(x0.rows(), x0.cols());
  st.rho = rho;
  const int n = problem.dim();
  for (int i = 0; i < problem.n_agents(); ++i) {
    const auto& a = problem.agents[i];
    Eigen::MatrixXd m = 2.0 * a.c.transpose() * a.c +
                        2.0 * rho * g.degree(i) * Eigen::MatrixXd::Identity(n, n);
    st.primal_factor.emplace_back(m.ldlt());
  }
  return st;
}

void c_admm_step(AdmmState& st, const Graph& g, const ProblemInstance& problem) {
  const int n_agents = problem.n_agents();
  // Dual ascent on the edge consensus constraints, then the closed-form primal.
  Eigen::MatrixXd p_next = st.p;
  for (int i = 0; i < n_agents; ++i)
    for (int j : g.neighbors(i)) p_next.row(i) += st.rho * (st.x.row(i) - st.x.row(j));
  Eigen::MatrixXd x_next(st.x.rows(), st.x.cols());
  for (int i = 0; i < n_agents; ++i) {
    const auto& a = problem.agents[i];
    Eigen::VectorXd rhs = 2.0 * a.c.transpose() * a.y - p_next.row(i).transpose();
    for (int j : g.neighbors(i))
      rhs += st.rho * (st.x.row(i) + st.x.row(j)).transpose();
    x_next.row(i) = st.primal_factor[i].solve(rhs).transpose();
  }
  check_finite(x_next, "c_admm_step", st.k + 1);
  st.p = std::move(p_next);
  st.x = std::move(x_next);
  ++st.k;
}

namespace {

template <typename State, typename Step>
RunRecord run_loop(const char* name, const ProblemInstance& problem, State& st,
                   double tol_rse, int max_iter, Step step) {
  if (tol_rse <= 0.0) throw std::invalid_argument("run: tol_rse must be positive");
  RunRecord rec;
  rec.algorithm = name;
  auto [hi, lo] = rse_range(st.x, problem.x_star);
  rec.rse_max.push_back(hi);
  rec.rse_min.push_back(lo);
  while (rec.rse_max.back() > tol_rse && st.k < max_iter) {
    step(st);
    auto [h, l] = rse_range(st.x, problem.x_star);
    rec.rse_max.push_back(h);
    rec.rse_min.push_back(l);
  }
  rec.iterations = st.k;
  rec.converged = rec.rse_max.back() <= tol_rse;
  return rec;
}

}  // namespace

RunRecord run_diging_atc(const ProblemInstance& problem, const Graph& g, const MixingMatrix& w,
                         double alpha, double tol_rse, int max_iter, const Eigen::MatrixXd& x0) {
  TrackingState st = init_tracking(problem, x0);
  return run_loop("diging_atc", problem, st, tol_rse, max_iter,
                  [&](TrackingState& s) { diging_atc_step(s, w, g, problem, alpha); });
}

RunRecord run_ab_push_pull(const ProblemInstance& problem, const Graph& g, const MixingMatrix& w,
                           double alpha, double tol_rse, int max_iter, const Eigen::MatrixXd& x0) {
  TrackingState st = init_tracking(problem, x0);
  return run_loop("ab_push_pull", problem, st, tol_rse, max_iter,
                  [&](TrackingState& s) { ab_push_pull_step(s, w, g, problem, alpha); });
}

RunRecord run_abm(const ProblemInstance& problem, const Graph& g, const MixingMatrix& w,
                  double alpha, double gamma, double tol_rse, int max_iter,
                  const Eigen::MatrixXd& x0) {
  TrackingState st = init_tracking(problem, x0);
  return run_loop("abm", problem, st, tol_rse, max_iter,
                  [&](TrackingState& s) { abm_step(s, w, g, problem, alpha, gamma); });
}

RunRecord run_c_admm(const ProblemInstance& problem, const Graph& g, double rho,
                     double tol_rse, int max_iter, const Eigen::MatrixXd& x0) {
  AdmmState st = init_admm(problem, g, x0, rho);
  return run_loop("c_admm", problem, st, tol_rse, max_iter,
                  [&](AdmmState& s) { c_admm_step(s, g, problem); });
}

}  // namespace dcg
