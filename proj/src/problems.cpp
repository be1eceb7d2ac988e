#include "dcg/problems.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>

#include "dcg/errors.hpp"
#include "dcg/linalg.hpp"

namespace dcg {

std::pair<double, Eigen::VectorXd> AgentObjective::eval(const Eigen::VectorXd& x) const {
  if (x.size() != c.cols()) throw std::invalid_argument("AgentObjective: dimension mismatch");
  Eigen::VectorXd r = c * x - y;
  if (loss == LossKind::squared) {
    return {r.squaredNorm(), 2.0 * c.transpose() * r};
  }
  double v = 0.0;
  Eigen::VectorXd psi(r.size());
  for (Eigen::Index k = 0; k < r.size(); ++k) {
    double u = r[k];
    if (std::abs(u) <= xi) {
      v += 0.5 * u * u;
      psi[k] = u;
    } else {
      v += xi * (std::abs(u) - 0.5 * xi);
      psi[k] = u > 0.0 ? xi : -xi;
    }
  }
  return {v, c.transpose() * psi};
}

double AgentObjective::value(const Eigen::VectorXd& x) const { return eval(x).first; }

Eigen::VectorXd AgentObjective::gradient(const Eigen::VectorXd& x) const {
  return eval(x).second;
}

double AgentObjective::lipschitz() const {
  double lam = largest_eigenvalue_psd(c.transpose() * c);
  return loss == LossKind::squared ? 2.0 * lam : lam;
}

std::pair<double, Eigen::VectorXd> ProblemInstance::aggregate_eval(
    const Eigen::VectorXd& x) const {
  double v = 0.0;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
  for (const auto& a : agents) {
    auto [vi, gi] = a.eval(x);
    v += vi;
    g += gi;
  }
  double inv_n = 1.0 / static_cast<double>(agents.size());
  return {v * inv_n, g * inv_n};
}

ValueGrad ProblemInstance::aggregate_oracle() const {
  return [this](const Eigen::VectorXd& x) { return aggregate_eval(x); };
}

HessVec ProblemInstance::aggregate_hess_vec() const {
  return [this](const Eigen::VectorXd& v) {
    Eigen::VectorXd hv = Eigen::VectorXd::Zero(v.size());
    for (const auto& a : agents) {
      double scale = a.loss == LossKind::squared ? 2.0 : 1.0;
      hv += scale * (a.c.transpose() * (a.c * v));
    }
    return Eigen::VectorXd(hv / static_cast<double>(agents.size()));
  };
}

double ProblemInstance::lipschitz() const {
  double l = 0.0;
  for (const auto& a : agents) l = std::max(l, a.lipschitz());
  return l;
}

namespace {

Eigen::MatrixXd random_normal(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

// Normal-equations solve with iterative refinement so the aggregate gradient
// at the solution drops to the 1e-12 optimality target.
Eigen::VectorXd solve_normal_equations(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  auto ldlt = a.ldlt();
  Eigen::VectorXd x = ldlt.solve(b);
  for (int pass = 0; pass < 3; ++pass) x += ldlt.solve(b - a * x);
  return x;
}

}  // namespace

ProblemInstance generate_ls_instance(int n_agents, int n, int m_lo, int m_hi,
                                     std::uint64_t seed) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    std::uniform_int_distribution<int> m_dist(m_lo, m_hi);

    ProblemInstance p;
    p.loss = LossKind::squared;
    p.seed = seed;
    p.resample_count = attempt;
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n_agents; ++i) {
      int m = m_dist(rng);
      AgentObjective a;
      a.c = random_normal(m, n, rng);
      a.y = random_normal(m, 1, rng);
      gram += a.c.transpose() * a.c;
      rhs += a.c.transpose() * a.y;
      p.agents.push_back(std::move(a));
    }
    if (gram.ldlt().rcond() < 1e-12) continue;  // singular aggregate, bump sub-seed

    p.x_star = solve_normal_equations(gram, rhs);
    auto [fv, gv] = p.aggregate_eval(p.x_star);
    if (gv.norm() > 1e-12) continue;
    p.f_star = fv;
    return p;
  }
  throw generation_error("generate_ls_instance: exhausted resampling attempts");
}

HuberInstance generate_huber_instance(int n_agents, int n, double xi, std::uint64_t seed) {
  if (xi <= 0.0) throw std::invalid_argument("generate_huber_instance: xi must be positive");

  for (int attempt = 0; attempt < 100; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    ProblemInstance p;
    p.loss = LossKind::huber;
    p.xi = xi;
    p.seed = seed;
    p.resample_count = attempt;

    Eigen::VectorXd x_true = random_normal(n, 1, rng);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n_agents; ++i) {
      AgentObjective a;
      a.loss = LossKind::huber;
      a.xi = xi;
      a.c = random_normal(1, n, rng);
      a.y = a.c * x_true + 0.1 * xi * random_normal(1, 1, rng);
      gram += a.c.transpose() * a.c;
      rhs += a.c.transpose() * a.y;
      p.agents.push_back(std::move(a));
    }
    if (gram.ldlt().rcond() < 1e-12) continue;

    // Candidate optimum from the quadratic-zone model; valid only when every
    // residual stays strictly inside the l2^2-zone.
    Eigen::VectorXd x_ls = solve_normal_equations(gram, rhs);
    bool inside = true;
    for (const auto& a : p.agents)
      if (std::abs((a.c * x_ls - a.y)(0)) >= 0.9 * xi) inside = false;
    if (!inside) continue;

    // Polish with centralized nonlinear CG.
    CgResult cg = cg_minimize(
        [&p](const Eigen::VectorXd& x) { return p.aggregate_eval(x); }, nullptr,
        x_ls, BetaScheme::pr_plus(), StepRule::backtracking(1.0), 1e-14, 500);
    p.x_star = cg.x;
    auto [fv, gv] = p.aggregate_eval(p.x_star);
    if (gv.norm() > 1e-12) continue;
    p.f_star = fv;
    for (const auto& a : p.agents)
      if (std::abs((a.c * p.x_star - a.y)(0)) >= xi) inside = false;
    if (!inside) continue;

    // Initial iterates with each agent's own residual in the l1-zone. A shared
    // offset keeps the consensus mean in the l1-zone too, so mixing alone
    // cannot collapse the swarm into the quadratic region on round one.
    Eigen::VectorXd offset = random_normal(n, 1, rng);
    offset *= 5.0 * xi / offset.norm();
    Eigen::MatrixXd x_init(n_agents, n);
    for (int i = 0; i < n_agents; ++i) {
      const auto& a = p.agents[i];
      Eigen::VectorXd base = p.x_star + offset + 0.25 * random_normal(n, 1, rng);
      double r = (a.c * base - a.y)(0);
      double target = (r >= 0.0 ? 1.0 : -1.0) * xi * (2.0 + 2.0 * unif(rng));
      Eigen::VectorXd row = a.c.row(0).transpose();
      base += ((target - r) / row.squaredNorm()) * row;
      if (std::abs((a.c * base - a.y)(0)) <= xi)
        throw generation_error("generate_huber_instance: initial iterate not in l1-zone");
      x_init.row(i) = base.transpose();
    }
    return {std::move(p), std::move(x_init)};
  }
  throw generation_error("generate_huber_instance: exhausted resampling attempts");
}

void save_fixture(std::ostream& os, const ProblemInstance& p) {
  os.precision(17);
  os << "dcgfixture 1\n";
  os << p.n_agents() << " " << p.dim() << " "
     << (p.loss == LossKind::squared ? "squared" : "huber") << " " << p.xi << " "
     << p.seed << "\n";
  for (const auto& a : p.agents) os << a.c.rows() << " ";
  os << "\n";
  for (const auto& a : p.agents) {
    for (int i = 0; i < a.c.rows(); ++i) {
      for (int j = 0; j < a.c.cols(); ++j) os << a.c(i, j) << " ";
      os << "\n";
    }
    for (int i = 0; i < a.y.size(); ++i) os << a.y[i] << " ";
    os << "\n";
  }
  for (int j = 0; j < p.x_star.size(); ++j) os << p.x_star[j] << " ";
  os << "\n" << p.f_star << "\n";
}

ProblemInstance load_fixture(std::istream& is) {
  std::string magic;
  int version = 0;
  is >> magic >> version;
  if (magic != "dcgfixture" || version != 1)
    throw std::invalid_argument("load_fixture: bad header");
  int n_agents = 0, n = 0;
  std::string loss;
  ProblemInstance p;
  is >> n_agents >> n >> loss >> p.xi >> p.seed;
  p.loss = loss == "squared" ? LossKind::squared : LossKind::huber;
  std::vector<int> ms(n_agents);
  for (auto& m : ms) is >> m;
  for (int i = 0; i < n_agents; ++i) {
    AgentObjective a;
    a.loss = p.loss;
    a.xi = p.xi;
    a.c.resize(ms[i], n);
    a.y.resize(ms[i]);
    for (int r = 0; r < ms[i]; ++r)
      for (int j = 0; j < n; ++j) is >> a.c(r, j);
    for (int r = 0; r < ms[i]; ++r) is >> a.y[r];
    p.agents.push_back(std::move(a));
  }
  p.x_star.resize(n);
  for (int j = 0; j < n; ++j) is >> p.x_star[j];
  is >> p.f_star;
  if (!is) throw std::invalid_argument("load_fixture: truncated fixture");
  return p;
}

}  // namespace dcg
