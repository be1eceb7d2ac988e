#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dcg {

// Per-iteration snapshots of the stacked swarm variables. Snapshot l holds the
// state at iteration l; beta[l] is the parameter applied on the l -> l+1
// transition, so beta has one entry fewer than the snapshots.
struct IterateTrace {
  std::vector<Eigen::MatrixXd> x, s, z, g;
  std::vector<Eigen::VectorXd> beta;
  Eigen::VectorXd alpha;  // constant per run

  int length() const { return static_cast<int>(x.size()); }
};

// Trace of one algorithm run.
struct RunRecord {
  std::string algorithm;
  std::vector<double> rse_max;  // per iteration, includes k = 0
  std::vector<double> rse_min;
  int iterations = 0;
  bool converged = false;
  double bytes_per_agent = 0.0;     // cumulative sent bytes, mean over agents
  double seconds_per_agent = 0.0;   // loop time / N, sequential execution
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  double kappa = 0.0;

  double final_rse() const { return rse_max.empty() ? 0.0 : rse_max.back(); }
};

}  // namespace dcg
