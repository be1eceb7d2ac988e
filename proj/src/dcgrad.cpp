#include "dcg/dcgrad.hpp"

#include <stdexcept>

#include "dcg/errors.hpp"

namespace dcg {

SwarmState init_swarm(const ProblemInstance& problem, const Eigen::MatrixXd& x0,
                      const Eigen::VectorXd& alphas) {
  const int n_agents = problem.n_agents();
  const int n = problem.dim();
  if (x0.rows() != n_agents || x0.cols() != n)
    throw std::invalid_argument("init_swarm: x0 shape mismatch");
  if (alphas.size() != n_agents)
    throw std::invalid_argument("init_swarm: alpha count mismatch");
  if ((alphas.array() <= 0.0).any())
    throw std::invalid_argument("init_swarm: step-sizes must be positive");

  SwarmState s;
  s.x = x0;
  s.g.resize(n_agents, n);
  for (int i = 0; i < n_agents; ++i)
    s.g.row(i) = problem.agents[i].gradient(x0.row(i).transpose()).transpose();
  s.s = -s.g;
  s.z = s.s;
  s.alpha = alphas;
  s.beta = Eigen::VectorXd::Zero(n_agents);
  return s;
}

Eigen::MatrixXd mix(const MixingMatrix& w, const Graph& g, const Eigen::MatrixXd& u) {
  const int n_agents = g.n_agents();
  Eigen::MatrixXd out(n_agents, u.cols());
  for (int i = 0; i < n_agents; ++i) {
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(u.cols());
    int self_done = 0;
    auto add_self = [&] { acc += w.w(i, i) * u.row(i); };
    for (int j : g.neighbors(i)) {
      if (!self_done && j > i) {
        add_self();
        self_done = 1;
      }
      acc += w.w(i, j) * u.row(j);
    }
    if (!self_done) add_self();
    out.row(i) = acc;
  }
  return out;
}

namespace {

void check_finite(const Eigen::MatrixXd& m, const char* what, int k) {
  if (!m.allFinite()) throw divergence_error(std::string(what) + ": non-finite iterate", k);
}

Eigen::MatrixXd local_gradients(const ProblemInstance& problem, const Eigen::MatrixXd& x) {
  Eigen::MatrixXd g(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i)
    g.row(i) = problem.agents[i].gradient(x.row(i).transpose()).transpose();
  return g;
}

}  // namespace

void dcgrad_step(SwarmState& swarm, const MixingMatrix& w, const Graph& g,
                 const ProblemInstance& problem, const BetaScheme& scheme) {
  // Phase 1: u_j = x_j + alpha_j z_j from the iteration-k snapshot.
  Eigen::MatrixXd u = swarm.x + swarm.alpha.asDiagonal() * swarm.z;
  Eigen::MatrixXd x_next = mix(w, g, u);
  check_finite(x_next, "dcgrad_step", swarm.k + 1);

  // Phase 2: local gradient, beta, and conjugate direction.
  Eigen::MatrixXd g_next = local_gradients(problem, x_next);
  check_finite(g_next, "dcgrad_step", swarm.k + 1);
  Eigen::MatrixXd s_next(swarm.s.rows(), swarm.s.cols());
  for (int i = 0; i < swarm.s.rows(); ++i) {
    double b = beta(scheme, g_next.row(i).transpose(), swarm.g.row(i).transpose(),
                    swarm.s.row(i).transpose());
    swarm.beta[i] = b;
    s_next.row(i) = -g_next.row(i) + b * swarm.s.row(i);
  }

  // Phase 3: v_j = z_j + s_j^{k+1} - s_j^{k}.
  Eigen::MatrixXd v = swarm.z + s_next - swarm.s;
  Eigen::MatrixXd z_next = mix(w, g, v);
  check_finite(z_next, "dcgrad_step", swarm.k + 1);

  swarm.x = std::move(x_next);
  swarm.g = std::move(g_next);
  swarm.s = std::move(s_next);
  swarm.z = std::move(z_next);
  ++swarm.k;
}

void vanilla_distributed_cg_step(SwarmState& swarm, const MixingMatrix& w, const Graph& g,
                                 const ProblemInstance& problem, const BetaScheme& scheme) {
  Eigen::MatrixXd x_next = mix(w, g, swarm.x) + swarm.alpha.asDiagonal() * swarm.s;
  check_finite(x_next, "vanilla_distributed_cg_step", swarm.k + 1);
  Eigen::MatrixXd g_next = local_gradients(problem, x_next);
  check_finite(g_next, "vanilla_distributed_cg_step", swarm.k + 1);
  Eigen::MatrixXd s_next(swarm.s.rows(), swarm.s.cols());
  for (int i = 0; i < swarm.s.rows(); ++i) {
    double b = beta(scheme, g_next.row(i).transpose(), swarm.g.row(i).transpose(),
                    swarm.s.row(i).transpose());
    swarm.beta[i] = b;
    s_next.row(i) = -g_next.row(i) + b * swarm.s.row(i);
  }
  swarm.x = std::move(x_next);
  swarm.g = std::move(g_next);
  swarm.s = std::move(s_next);
  swarm.z.setZero();
  ++swarm.k;
}

std::pair<double, double> rse_range(const Eigen::MatrixXd& x, const Eigen::VectorXd& x_star) {
  double denom = x_star.norm();
  double hi = 0.0, lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < x.rows(); ++i) {
    double r = (x.row(i).transpose() - x_star).norm() / denom;
    hi = std::max(hi, r);
    lo = std::min(lo, r);
  }
  return {hi, lo};
}

namespace {

void snapshot(IterateTrace* trace, const SwarmState& s, bool with_beta) {
  if (!trace) return;
  trace->x.push_back(s.x);
  trace->s.push_back(s.s);
  trace->z.push_back(s.z);
  trace->g.push_back(s.g);
  if (with_beta) trace->beta.push_back(s.beta);
}

template <typename Step>
RunRecord run_swarm(const char* name, const ProblemInstance& problem, const Graph& g,
                    const Eigen::VectorXd& alphas, double tol_rse, int max_iter,
                    const Eigen::MatrixXd& x0, IterateTrace* trace, Step step) {
  if (tol_rse <= 0.0) throw std::invalid_argument("run: tol_rse must be positive");
  RunRecord rec;
  rec.algorithm = name;
  SwarmState swarm = init_swarm(problem, x0, alphas);
  if (trace) trace->alpha = alphas;
  snapshot(trace, swarm, false);
  auto [hi, lo] = rse_range(swarm.x, problem.x_star);
  rec.rse_max.push_back(hi);
  rec.rse_min.push_back(lo);
  while (rec.rse_max.back() > tol_rse && swarm.k < max_iter) {
    step(swarm);
    snapshot(trace, swarm, true);
    auto [h, l] = rse_range(swarm.x, problem.x_star);
    rec.rse_max.push_back(h);
    rec.rse_min.push_back(l);
  }
  rec.iterations = swarm.k;
  rec.converged = rec.rse_max.back() <= tol_rse;
  return rec;
}

}  // namespace

RunRecord run_dcgrad(const ProblemInstance& problem, const Graph& g, const MixingMatrix& w,
                     const Eigen::VectorXd& alphas, const BetaScheme& scheme,
                     double tol_rse, int max_iter, const Eigen::MatrixXd& x0,
                     IterateTrace* trace) {
  return run_swarm("dc_grad", problem, g, alphas, tol_rse, max_iter, x0, trace,
                   [&](SwarmState& s) { dcgrad_step(s, w, g, problem, scheme); });
}

RunRecord run_vanilla_cg(const ProblemInstance& problem, const Graph& g,
                         const MixingMatrix& w, const Eigen::VectorXd& alphas,
                         const BetaScheme& scheme, double tol_rse, int max_iter,
                         const Eigen::MatrixXd& x0) {
  return run_swarm("vanilla_cg", problem, g, alphas, tol_rse, max_iter, x0, nullptr,
                   [&](SwarmState& s) { vanilla_distributed_cg_step(s, w, g, problem, scheme); });
}

}  // namespace dcg
