#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dcg/record.hpp"

namespace dcg {

struct ConsensusViolation {
  double x, s, z, g;  // spectral norms of the tilde matrices
};

ConsensusViolation consensus_violation(const IterateTrace& trace, int k);

struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

// Scalars derived from the realized finite trace: max step/parameter norms and
// the heterogeneity ratios r_alpha, r_beta. A zero mean beta at some iteration
// makes r_beta infinite, which leaves the bounds trivially satisfied.
struct TraceScalars {
  double alpha_max = 0.0;
  double beta_max = 0.0;
  double r_alpha = 0.0;
  double r_beta = 0.0;
};

TraceScalars trace_scalars(const IterateTrace& trace);

// Evaluates the three consensus-violation recursions at transition k -> k+1
// with 1e-9 slack. Requires 1 <= k <= length - 2; lambda is the mixing
// spectral gap and lipschitz the aggregate gradient Lipschitz constant.
std::vector<BoundCheck> lemma1_check(const IterateTrace& trace, int k, double lambda,
                                     double lipschitz);

// Cumulative root-sum-square sequences of the tilde norms and the residual
// terms; entry k of r covers l = 0..k and needs the gradient at l + 1, so r
// has one entry fewer than the others.
struct CumulativeSequences {
  std::vector<double> x, s, z, r;
};

CumulativeSequences cumulative_sequences(const IterateTrace& trace);

// sqrt(N) * 11^T/N-projected norm of diag(d) * B.
double mean_weighted_norm(const Eigen::VectorXd& d, const Eigen::MatrixXd& b);

// One row per iteration with the diagnostic columns.
void write_diagnostics_csv(std::ostream& os, const IterateTrace& trace);

}  // namespace dcg
