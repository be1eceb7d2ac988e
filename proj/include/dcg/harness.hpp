#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dcg/baselines.hpp"
#include "dcg/dcgrad.hpp"
#include "dcg/tuning.hpp"

namespace dcg {

struct ExperimentConfig {
  std::string family = "ls";  // "ls" or "huber"
  int n_agents = 50;
  int dim = 10;
  double xi = 1.0;
  std::vector<double> kappas = {0.48, 0.80, 0.97, 1.00};
  int trials = 20;
  double tol = 1e-13;
  int max_iter = 10000;  // 3000 is the huber default
  std::vector<Algo> algorithms = {Algo::dc_grad, Algo::diging_atc, Algo::c_admm,
                                  Algo::ab_push_pull, Algo::abm};
  BetaScheme scheme = BetaScheme::clamped(BetaScheme::Kind::hestenes_stiefel, 0.5);
  std::uint64_t seed = 0;
  int tune_evals = 24;

  static ExperimentConfig defaults_for(const std::string& family);
  static ExperimentConfig parse(std::istream& is);
  void write(std::ostream& os) const;
};

// Double-precision accounting of sent bytes: vectors-per-message * n doubles
// to every neighbor each iteration, averaged over agents.
int vectors_per_message(Algo a);
double message_bytes_per_agent(Algo a, const Graph& g, int n, int iterations);

// One tuned run of one algorithm; fills bytes/seconds/params fields.
RunRecord run_tuned(Algo algo, const ProblemInstance& problem, const Graph& g,
                    const MixingMatrix& w, const ExperimentConfig& cfg,
                    const Eigen::MatrixXd& x0, IterateTrace* trace = nullptr);

struct ExperimentResults {
  ExperimentConfig config;
  std::vector<RunRecord> records;  // one per (kappa, trial, algorithm)
  std::vector<std::string> failures;
};

ExperimentResults run_experiment(const ExperimentConfig& cfg);

// table_time.csv, table_bytes.csv, rse_trace_<algo>_<kappa>.csv, manifest.txt
// and a gnuplot script referencing the traces.
void emit_outputs(const ExperimentResults& results, const std::string& out_dir);

Eigen::MatrixXd initial_iterates(const ProblemInstance& problem, const Eigen::MatrixXd* huber_init);

}  // namespace dcg
