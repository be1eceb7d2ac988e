#include <random>

#include "dcg/cg_core.hpp"
#include "dcg/errors.hpp"
#include "dcg/problems.hpp"
#include "doctest.h"

using namespace dcg;

namespace {

struct Quadratic {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  ValueGrad oracle() const {
    return [this](const Eigen::VectorXd& x) {
      Eigen::VectorXd g = a * x - b;
      return std::make_pair(0.5 * x.dot(a * x) - b.dot(x), g);
    };
  }
  HessVec hess() const {
    return [this](const Eigen::VectorXd& v) { return Eigen::VectorXd(a * v); };
  }
};

Quadratic random_spd_quadratic(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = normal(rng);
  Quadratic q;
  q.a = m.transpose() * m + Eigen::MatrixXd::Identity(n, n);
  q.b.resize(n);
  for (int i = 0; i < n; ++i) q.b[i] = normal(rng);
  return q;
}

}  // namespace

TEST_CASE("beta scheme hand values") {
  Eigen::VectorXd g(2), z(2), s(2);
  g << 1.0, 2.0;
  s << -1.0, -2.0;
  z.setZero();

  CHECK(beta(BetaScheme::fletcher_reeves(), g, g, s) == doctest::Approx(1.0));
  CHECK(beta(BetaScheme::polak_ribiere(), g, g, s) == doctest::Approx(0.0));
  // 0/0 := 0
  CHECK(beta(BetaScheme::fletcher_reeves(), z, z, s) == 0.0);
  CHECK(beta(BetaScheme::hestenes_stiefel(), g, g, s) == 0.0);  // degenerate denominator
}

TEST_CASE("pr_plus and clamp") {
  Eigen::VectorXd g_prev(1), g_next(1), s(1);
  g_prev << 1.0;
  g_next << 0.2;
  s << -1.0;
  double pr = beta(BetaScheme::polak_ribiere(), g_next, g_prev, s);
  CHECK(pr == doctest::Approx(0.2 * (0.2 - 1.0)));
  CHECK(beta(BetaScheme::pr_plus(), g_next, g_prev, s) == 0.0);
  double cap = 0.1;
  Eigen::VectorXd big(1);
  big << 3.0;
  CHECK(beta(BetaScheme::clamped(BetaScheme::Kind::fletcher_reeves, cap), big, g_prev, s) ==
        doctest::Approx(cap));
}

TEST_CASE("exact line search terminates within n iterations on SPD quadratics") {
  std::mt19937_64 rng(21);
  Quadratic q = random_spd_quadratic(5, rng);
  CgResult r = cg_minimize(q.oracle(), q.hess(), Eigen::VectorXd::Zero(5),
                           BetaScheme::fletcher_reeves(), StepRule::exact_quadratic(),
                           1e-10, 100);
  CHECK(r.converged);
  CHECK(r.iterations <= 5);
  // Direct-solve oracle.
  Eigen::VectorXd x_star = q.a.ldlt().solve(q.b);
  CHECK((r.x - x_star).norm() < 1e-8);
}

TEST_CASE("starting at the minimizer takes zero iterations") {
  std::mt19937_64 rng(22);
  Quadratic q = random_spd_quadratic(4, rng);
  Eigen::VectorXd x_star = q.a.ldlt().solve(q.b);
  // refine so the gradient is tiny
  x_star += q.a.ldlt().solve(q.b - q.a * x_star);
  CgResult r = cg_minimize(q.oracle(), q.hess(), x_star, BetaScheme::fletcher_reeves(),
                           StepRule::exact_quadratic(), 1e-8, 100);
  CHECK(r.iterations == 0);
  CHECK((r.x - x_star).norm() == 0.0);
}

TEST_CASE("successive directions are A-conjugate under exact line search") {
  std::mt19937_64 rng(23);
  Quadratic q = random_spd_quadratic(6, rng);
  CgResult r = cg_minimize(q.oracle(), q.hess(), Eigen::VectorXd::Ones(6),
                           BetaScheme::fletcher_reeves(), StepRule::exact_quadratic(),
                           1e-12, 6);
  // Reconstruct directions from consecutive iterates (x+ - x = alpha s).
  for (std::size_t k = 0; k + 2 < r.iterates.size(); ++k) {
    Eigen::VectorXd s0 = r.iterates[k + 1] - r.iterates[k];
    Eigen::VectorXd s1 = r.iterates[k + 2] - r.iterates[k + 1];
    if (s0.norm() == 0.0 || s1.norm() == 0.0) continue;
    Eigen::VectorXd as0 = q.a * s0;
    CHECK(std::abs(s1.dot(as0)) <= 1e-8 * s1.norm() * as0.norm());
  }
}

TEST_CASE("all beta schemes coincide on strongly-convex quadratics") {
  std::mt19937_64 rng(24);
  Quadratic q = random_spd_quadratic(7, rng);
  auto schemes = {BetaScheme::hestenes_stiefel(), BetaScheme::fletcher_reeves(),
                  BetaScheme::polak_ribiere()};
  std::vector<CgResult> results;
  for (const auto& s : schemes)
    results.push_back(cg_minimize(q.oracle(), q.hess(), Eigen::VectorXd::Zero(7), s,
                                  StepRule::exact_quadratic(), 1e-10, 7));
  for (std::size_t k = 0; k < results[0].iterates.size(); ++k)
    for (std::size_t j = 1; j < results.size(); ++j) {
      REQUIRE(k < results[j].iterates.size());
      CHECK((results[0].iterates[k] - results[j].iterates[k]).norm() <= 1e-8);
    }
}

TEST_CASE("monotone descent under exact line search") {
  std::mt19937_64 rng(25);
  Quadratic q = random_spd_quadratic(8, rng);
  CgResult r = cg_minimize(q.oracle(), q.hess(), Eigen::VectorXd::Ones(8),
                           BetaScheme::polak_ribiere(), StepRule::exact_quadratic(),
                           1e-12, 20);
  auto f = q.oracle();
  for (std::size_t k = 0; k + 1 < r.iterates.size(); ++k)
    CHECK(f(r.iterates[k + 1]).first <= f(r.iterates[k]).first + 1e-12);
}

TEST_CASE("ls instance solved to tight relative error") {
  ProblemInstance p = generate_ls_instance(10, 6, 5, 15, 3);
  CgResult r = cg_minimize(p.aggregate_oracle(), p.aggregate_hess_vec(),
                           Eigen::VectorXd::Zero(6), BetaScheme::fletcher_reeves(),
                           StepRule::exact_quadratic(), 1e-12, 200);
  CHECK(r.converged);
  CHECK((r.x - p.x_star).norm() / p.x_star.norm() <= 1e-10);
}

TEST_CASE("backtracking line search minimizes the huber aggregate") {
  HuberInstance h = generate_huber_instance(10, 4, 1.0, 5);
  CgResult r = cg_minimize(h.problem.aggregate_oracle(), nullptr,
                           Eigen::VectorXd::Zero(4), BetaScheme::pr_plus(),
                           StepRule::backtracking(1.0), 1e-8, 5000);
  CHECK(r.converged);
  CHECK((r.x - h.problem.x_star).norm() / h.problem.x_star.norm() <= 1e-6);
}

TEST_CASE("divergence raises with the iteration index") {
  ValueGrad bad = [](const Eigen::VectorXd& x) {
    // Concave: fixed positive step along +g grows without bound.
    return std::make_pair(-0.5 * x.squaredNorm() * 1e150 * x.squaredNorm(),
                          Eigen::VectorXd(-1e150 * x.array().cube().matrix() * 4.0));
  };
  Eigen::VectorXd x0 = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(cg_minimize(bad, nullptr, x0, BetaScheme::fletcher_reeves(),
                              StepRule::fixed(10.0), 1e-20, 100),
                  divergence_error);
}
