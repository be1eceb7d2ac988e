#include "dcg/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "dcg/linalg.hpp"

namespace dcg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// The lemma bounds are evaluated in the Frobenius norm of the stacked blocks:
// the Lipschitz step ||g+ - g|| <= L ||x+ - x|| holds row-wise, which the
// spectral norm does not dominate.
double fro_tilde(const Eigen::MatrixXd& b) { return tilde(b).norm(); }

double diag_matrix_norm(const Eigen::VectorXd& d, const Eigen::MatrixXd& b) {
  return (d.asDiagonal() * b).norm();
}

}  // namespace

double mean_weighted_norm(const Eigen::VectorXd& d, const Eigen::MatrixXd& b) {
  // (1/N) 11^T diag(d) B is rank one: 1 v^T with v the weighted column mean.
  const double n = static_cast<double>(b.rows());
  Eigen::RowVectorXd v = (d.transpose() * b) / n;
  return std::sqrt(n) * v.norm();
}

ConsensusViolation consensus_violation(const IterateTrace& trace, int k) {
  if (k < 0 || k >= trace.length())
    throw std::invalid_argument("consensus_violation: k outside trace");
  return {spectral_norm(tilde(trace.x[k])), spectral_norm(tilde(trace.s[k])),
          spectral_norm(tilde(trace.z[k])), spectral_norm(tilde(trace.g[k]))};
}

TraceScalars trace_scalars(const IterateTrace& trace) {
  TraceScalars ts;
  // alpha is constant over the run: diag-matrix spectral norm = max entry.
  ts.alpha_max = trace.alpha.cwiseAbs().maxCoeff();
  double mean_alpha = trace.alpha.mean();
  ts.r_alpha = mean_alpha > 0.0 ? ts.alpha_max / mean_alpha : kInf;

  double inv_mean_beta_max = 0.0;
  for (const auto& b : trace.beta) {
    ts.beta_max = std::max(ts.beta_max, b.cwiseAbs().maxCoeff());
    // An identically-zero beta contributes nothing to any bound term, so it is
    // excluded from the mean-ratio; a zero mean with nonzero entries is a
    // genuine degeneracy and maps to an infinite ratio.
    if (b.cwiseAbs().maxCoeff() == 0.0) continue;
    double mb = std::abs(b.mean());
    inv_mean_beta_max = std::max(inv_mean_beta_max, mb > 0.0 ? 1.0 / mb : kInf);
  }
  ts.r_beta = ts.beta_max * inv_mean_beta_max;
  return ts;
}

std::vector<BoundCheck> lemma1_check(const IterateTrace& trace, int k, double lambda,
                                     double lipschitz) {
  if (k < 1 || k + 1 >= trace.length())
    throw std::invalid_argument("lemma1_check: k outside trace");
  const TraceScalars ts = trace_scalars(trace);
  const double slack = 1e-9;

  double xt_k = fro_tilde(trace.x[k]);
  double xt_k1 = fro_tilde(trace.x[k + 1]);
  double st_k = fro_tilde(trace.s[k]);
  double st_k1 = fro_tilde(trace.s[k + 1]);
  double zt_k = fro_tilde(trace.z[k]);
  double zt_k1 = fro_tilde(trace.z[k + 1]);
  double gt_k1 = fro_tilde(trace.g[k + 1]);

  double mean_az = mean_weighted_norm(trace.alpha, trace.z[k]);
  double mean_bs = mean_weighted_norm(trace.beta[k], trace.s[k]);
  double bs_k = diag_matrix_norm(trace.beta[k], trace.s[k]);
  double bs_km1 = k >= 1 ? diag_matrix_norm(trace.beta[k - 1], trace.s[k - 1]) : 0.0;

  std::vector<BoundCheck> checks;
  {
    double rhs = lambda * xt_k + lambda * ts.alpha_max * (1.0 + ts.r_alpha) * zt_k +
                 lambda * ts.r_alpha * mean_az;
    checks.push_back({"x_tilde", xt_k1, rhs, xt_k1 <= rhs + slack});
  }
  {
    double rhs = gt_k1 + ts.beta_max * (1.0 + ts.r_beta) * st_k +
                 (1.0 + ts.r_beta) * mean_bs;
    checks.push_back({"s_tilde", st_k1, rhs, st_k1 <= rhs + slack});
  }
  {
    double rhs = (lambda + lambda * lambda * lipschitz * ts.alpha_max * (1.0 + ts.r_alpha)) * zt_k +
                 lambda * lipschitz * (lambda + 1.0) * xt_k +
                 lambda * lipschitz * (lambda * ts.r_alpha + 1.0) * mean_az +
                 lambda * (bs_k + bs_km1);
    checks.push_back({"z_tilde", zt_k1, rhs, zt_k1 <= rhs + slack});
  }
  return checks;
}

CumulativeSequences cumulative_sequences(const IterateTrace& trace) {
  CumulativeSequences seq;
  double sx = 0.0, ss = 0.0, sz = 0.0, sr = 0.0;
  const int t = trace.length();
  for (int l = 0; l < t; ++l) {
    double xt = fro_tilde(trace.x[l]);
    double st = fro_tilde(trace.s[l]);
    double zt = fro_tilde(trace.z[l]);
    sx += xt * xt;
    ss += st * st;
    sz += zt * zt;
    seq.x.push_back(std::sqrt(sx));
    seq.s.push_back(std::sqrt(ss));
    seq.z.push_back(std::sqrt(sz));
    if (l + 1 < t) {
      double az = mean_weighted_norm(trace.alpha, trace.z[l]);
      double bs = mean_weighted_norm(trace.beta[l], trace.s[l]);
      double gt = fro_tilde(trace.g[l + 1]);
      sr += az * az + bs * bs + gt * gt;
      seq.r.push_back(std::sqrt(sr));
    }
  }
  return seq;
}

void write_diagnostics_csv(std::ostream& os, const IterateTrace& trace) {
  os.precision(17);
  os << "# diagnostics v1\n";
  os << "iteration,x_tilde,s_tilde,z_tilde,g_tilde,mean_z_minus_mean_s,"
        "mean_g,X,S,Z,R\n";
  CumulativeSequences seq = cumulative_sequences(trace);
  for (int k = 0; k < trace.length(); ++k) {
    ConsensusViolation cv = consensus_violation(trace, k);
    double zs = (row_mean(trace.z[k]) - row_mean(trace.s[k])).norm();
    double mg = spectral_norm(row_mean(trace.g[k]));
    os << k << "," << cv.x << "," << cv.s << "," << cv.z << "," << cv.g << ","
       << zs << "," << mg << "," << seq.x[k] << "," << seq.s[k] << "," << seq.z[k]
       << ","
       << (seq.r.empty() ? 0.0
                         : (k < static_cast<int>(seq.r.size()) ? seq.r[k] : seq.r.back()))
       << "\n";
  }
}

}  // namespace dcg
