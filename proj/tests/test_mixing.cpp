#include <Eigen/Eigenvalues>

#include "dcg/graph.hpp"
#include "dcg/linalg.hpp"
#include "dcg/mixing.hpp"
#include "doctest.h"

using namespace dcg;

namespace {

// Independent spectral-norm oracle via Eigen's SVD path.
double svd_norm(const Eigen::MatrixXd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()[0];
}

void check_assumption1(const MixingMatrix& m, const Graph& g) {
  const int n = g.n_agents();
  for (int i = 0; i < n; ++i) {
    CHECK(std::abs(m.w.row(i).sum() - 1.0) <= 1e-12);
    CHECK(std::abs(m.w.col(i).sum() - 1.0) <= 1e-12);
    for (int j = 0; j < n; ++j)
      if (i != j && !g.has_edge(i, j)) CHECK(m.w(i, j) == 0.0);
  }
  CHECK(m.lambda < 1.0);
  CHECK((m.w - m.w.transpose()).norm() < 1e-15);
}

}  // namespace

TEST_CASE("metropolis-hastings weight formula") {
  // deg(i)=2, deg(j)=3 with epsilon=1 -> 1/4 on that edge.
  Graph g(5, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {3, 4}});
  REQUIRE(g.degree(1) == 3);
  REQUIRE(g.degree(0) == 2);
  MixingMatrix m = metropolis_hastings(g, 1.0);
  CHECK(m.w(0, 1) == doctest::Approx(0.25));
  check_assumption1(m, g);
}

TEST_CASE("metropolis-hastings on the 2-agent complete graph") {
  Graph g(2, {{0, 1}});
  MixingMatrix m = metropolis_hastings(g, 1.0);
  CHECK(m.w(0, 0) == doctest::Approx(0.5));
  CHECK(m.w(0, 1) == doctest::Approx(0.5));
  CHECK(m.w(1, 1) == doctest::Approx(0.5));
  CHECK(m.lambda == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("laplacian weights, single edge with tau = 2") {
  Graph g(2, {{0, 1}});
  MixingMatrix m = laplacian_weights(g, 2.0);
  CHECK(m.w(0, 0) == doctest::Approx(0.5));
  CHECK(m.w(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("laplacian weights on the path with auto tau") {
  Graph g(3, {{0, 1}, {1, 2}});
  MixingMatrix m = laplacian_weights(g);  // tau = deg_max + 1 = 3
  Eigen::MatrixXd expected = Eigen::MatrixXd::Identity(3, 3) - g.laplacian() / 3.0;
  CHECK((m.w - expected).norm() < 1e-15);
  check_assumption1(m, g);
}

TEST_CASE("laplacian weights reject too-small tau") {
  Graph g(3, {{0, 1}, {1, 2}});
  double lmax = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g.laplacian())
                    .eigenvalues()
                    .maxCoeff();
  CHECK_THROWS_AS(laplacian_weights(g, lmax / 2.0 - 1e-6), std::invalid_argument);
}

TEST_CASE("spectral gap of random graphs matches the SVD oracle") {
  for (std::uint64_t seed : {3ULL, 17ULL}) {
    Graph g = generate_random_connected(20, 0.35, seed);
    for (bool mh : {true, false}) {
      MixingMatrix m = mh ? metropolis_hastings(g) : laplacian_weights(g);
      check_assumption1(m, g);
      Eigen::MatrixXd dev =
          m.w - Eigen::MatrixXd::Constant(20, 20, 1.0 / 20.0);
      CHECK(m.lambda == doctest::Approx(svd_norm(dev)).epsilon(1e-9));
    }
  }
}

TEST_CASE("spectral gap special cases") {
  Eigen::MatrixXd avg = Eigen::MatrixXd::Constant(4, 4, 0.25);
  CHECK(spectral_gap(avg) == doctest::Approx(0.0).epsilon(1e-12));
  // Degenerate fixture, not graph-compatible: identity has gap exactly 1.
  CHECK(spectral_gap(Eigen::MatrixXd::Identity(4, 4)) == doctest::Approx(1.0));
}

TEST_CASE("W^k contracts to the averaging matrix at the predicted k") {
  Graph g = generate_random_connected(15, 0.4, 9);
  MixingMatrix m = metropolis_hastings(g);
  int k = predicted_consensus_steps(m.lambda);
  Eigen::MatrixXd wk = Eigen::MatrixXd::Identity(15, 15);
  for (int i = 0; i < k; ++i) wk = wk * m.w;
  Eigen::MatrixXd target = Eigen::MatrixXd::Constant(15, 15, 1.0 / 15.0);
  CHECK(svd_norm(wk - target) <= 1e-9);
}
