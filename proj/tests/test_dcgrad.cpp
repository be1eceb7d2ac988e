#include <random>

#include "dcg/dcgrad.hpp"
#include "dcg/errors.hpp"
#include "doctest.h"

using namespace dcg;

namespace {

struct Setup {
  ProblemInstance problem;
  Graph graph;
  MixingMatrix w;
};

Setup ls_setup(int n_agents, int dim, double kappa, std::uint64_t seed) {
  Setup s{generate_ls_instance(n_agents, dim, 5, 15, seed),
          n_agents == 1 ? Graph(1, {}) : generate_random_connected(n_agents, kappa, seed),
          MixingMatrix{}};
  s.w = metropolis_hastings(s.graph);
  return s;
}

}  // namespace

TEST_CASE("mix agrees with the dense matrix product") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  Graph g = generate_random_connected(12, 0.5, 4);
  MixingMatrix w = metropolis_hastings(g);
  Eigen::MatrixXd u(12, 5);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 5; ++j) u(i, j) = normal(rng);
  CHECK((mix(w, g, u) - w.w * u).norm() <= 1e-14 * u.norm());
}

TEST_CASE("single agent reduces to centralized fixed-step cg") {
  Setup s = ls_setup(1, 6, 1.0, 8);
  double alpha = 0.4 / s.problem.lipschitz();
  Eigen::MatrixXd x0 = Eigen::MatrixXd::Zero(1, 6);

  IterateTrace trace;
  run_dcgrad(s.problem, s.graph, s.w, Eigen::VectorXd::Constant(1, alpha),
             BetaScheme::fletcher_reeves(), 1e-300, 25, x0, &trace);

  // Independent scalar-network recursion straight from the update equations.
  Eigen::VectorXd x = Eigen::VectorXd::Zero(6);
  Eigen::VectorXd g = s.problem.agents[0].gradient(x);
  Eigen::VectorXd sd = -g, z = sd;
  for (int k = 0; k + 1 < trace.length(); ++k) {
    x += alpha * z;
    Eigen::VectorXd g_next = s.problem.agents[0].gradient(x);
    double b = g.squaredNorm() < 1e-300 ? 0.0 : g_next.squaredNorm() / g.squaredNorm();
    Eigen::VectorXd s_next = -g_next + b * sd;
    z += s_next - sd;
    sd = s_next;
    g = g_next;
    double scale = std::max(1.0, x.norm());
    CHECK((trace.x[k + 1].row(0).transpose() - x).norm() <= 1e-13 * scale);
    CHECK((trace.z[k + 1].row(0).transpose() - z).norm() <= 1e-13 * scale);
    CHECK(trace.beta[k][0] == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("identical agents on the complete graph stay synchronized") {
  ProblemInstance p = generate_ls_instance(1, 5, 8, 8, 2);
  // Clone the single agent four times; aggregate optimum is unchanged.
  ProblemInstance clones = p;
  for (int i = 1; i < 4; ++i) clones.agents.push_back(p.agents[0]);
  Graph g = generate_random_connected(4, 1.0, 0);
  MixingMatrix w = metropolis_hastings(g);
  double alpha = 0.4 / clones.lipschitz();

  IterateTrace trace;
  run_dcgrad(clones, g, w, Eigen::VectorXd::Constant(4, alpha),
             BetaScheme::fletcher_reeves(), 1e-300, 30,
             Eigen::MatrixXd::Zero(4, 5), &trace);
  for (int k = 0; k < trace.length(); ++k)
    for (int i = 1; i < 4; ++i)
      CHECK((trace.x[k].row(i) - trace.x[k].row(0)).norm() <= 1e-12);
}

TEST_CASE("dc-grad converges on a small quadratic network") {
  Setup s = ls_setup(3, 4, 1.0, 5);
  double alpha = 0.5 / s.problem.lipschitz();
  RunRecord rec = run_dcgrad(s.problem, s.graph, s.w, Eigen::VectorXd::Constant(3, alpha),
                             BetaScheme::clamped(BetaScheme::Kind::fletcher_reeves, 0.5),
                             1e-10, 20000, Eigen::MatrixXd::Zero(3, 4));
  CHECK(rec.converged);
  CHECK(rec.final_rse() <= 1e-10);
  CHECK(static_cast<int>(rec.rse_max.size()) == rec.iterations + 1);
}

TEST_CASE("mean of z tracks the mean of s") {
  Setup s = ls_setup(6, 4, 0.6, 12);
  double alpha = 0.4 / s.problem.lipschitz();
  IterateTrace trace;
  run_dcgrad(s.problem, s.graph, s.w, Eigen::VectorXd::Constant(6, alpha),
             BetaScheme::clamped(BetaScheme::Kind::fletcher_reeves, 0.5), 1e-300, 40,
             Eigen::MatrixXd::Zero(6, 4), &trace);
  REQUIRE(trace.length() == 41);
  REQUIRE(static_cast<int>(trace.beta.size()) == 40);
  for (int k = 0; k < trace.length(); ++k) {
    Eigen::RowVectorXd zbar = trace.z[k].colwise().mean();
    Eigen::RowVectorXd sbar = trace.s[k].colwise().mean();
    CHECK((zbar - sbar).norm() <= 1e-10 * std::max(1.0, sbar.norm()));
  }
}

TEST_CASE("heterogeneous step-sizes within ten percent still converge") {
  Setup s = ls_setup(5, 4, 0.8, 3);
  double base = 0.4 / s.problem.lipschitz();
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unif(0.9, 1.1);
  Eigen::VectorXd alphas(5);
  for (int i = 0; i < 5; ++i) alphas[i] = base * unif(rng);
  RunRecord rec = run_dcgrad(s.problem, s.graph, s.w, alphas,
                             BetaScheme::clamped(BetaScheme::Kind::fletcher_reeves, 0.5),
                             1e-10, 20000, Eigen::MatrixXd::Zero(5, 4));
  CHECK(rec.converged);
}

TEST_CASE("max_iter zero records only the initial point") {
  Setup s = ls_setup(3, 4, 1.0, 6);
  RunRecord rec = run_dcgrad(s.problem, s.graph, s.w,
                             Eigen::VectorXd::Constant(3, 1e-3),
                             BetaScheme::fletcher_reeves(), 1e-13, 0,
                             Eigen::MatrixXd::Zero(3, 4));
  CHECK(rec.iterations == 0);
  CHECK(rec.rse_max.size() == 1);
  CHECK_FALSE(rec.converged);
}

TEST_CASE("vanilla distributed cg stalls where dc-grad does not") {
  Setup s = ls_setup(8, 5, 0.6, 4);
  double alpha = 0.4 / s.problem.lipschitz();
  Eigen::VectorXd alphas = Eigen::VectorXd::Constant(8, alpha);
  Eigen::MatrixXd x0 = Eigen::MatrixXd::Zero(8, 5);
  BetaScheme scheme = BetaScheme::clamped(BetaScheme::Kind::fletcher_reeves, 0.5);

  RunRecord good = run_dcgrad(s.problem, s.graph, s.w, alphas, scheme, 1e-10, 20000, x0);
  RunRecord bad = run_vanilla_cg(s.problem, s.graph, s.w, alphas, scheme, 1e-10, 20000, x0);
  CHECK(good.converged);
  CHECK_FALSE(bad.converged);
  CHECK(bad.final_rse() > 1e-6);  // fixed-point bias, not slow progress
}

TEST_CASE("init_swarm validates shapes and step-signs") {
  ProblemInstance p = generate_ls_instance(3, 4, 5, 10, 1);
  Eigen::MatrixXd x0 = Eigen::MatrixXd::Zero(3, 4);
  CHECK_THROWS_AS(init_swarm(p, Eigen::MatrixXd::Zero(2, 4), Eigen::VectorXd::Ones(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(init_swarm(p, x0, Eigen::VectorXd::Ones(2)), std::invalid_argument);
  CHECK_THROWS_AS(init_swarm(p, x0, Eigen::VectorXd::Zero(3)), std::invalid_argument);
  SwarmState sw = init_swarm(p, x0, Eigen::VectorXd::Constant(3, 1e-3));
  CHECK((sw.s + sw.g).norm() == 0.0);
  CHECK((sw.z - sw.s).norm() == 0.0);
}

TEST_CASE("oversized steps raise divergence with a positive iteration") {
  Setup s = ls_setup(4, 4, 1.0, 9);
  double huge = 1e3 / s.problem.lipschitz() * 1e3;
  try {
    run_dcgrad(s.problem, s.graph, s.w, Eigen::VectorXd::Constant(4, huge),
               BetaScheme::fletcher_reeves(), 1e-13, 20000,
               Eigen::MatrixXd::Zero(4, 4));
    FAIL("expected divergence_error");
  } catch (const divergence_error& e) {
    CHECK(e.iteration() > 0);
  }
}
