// dcg: command-line front end for the distributed conjugate gradient testbed.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dcg/diagnostics.hpp"
#include "dcg/errors.hpp"
#include "dcg/harness.hpp"
#include "dcg/linalg.hpp"

using namespace dcg;

namespace {

ExperimentConfig load_config(const std::string& path, const std::optional<std::uint64_t>& seed) {
  ExperimentConfig cfg;
  if (!path.empty()) {
    std::ifstream is(path);
    if (!is) throw CLI::ValidationError("--config", "cannot open " + path);
    cfg = ExperimentConfig::parse(is);
  } else {
    cfg = ExperimentConfig::defaults_for("ls");
  }
  if (seed) cfg.seed = *seed;
  return cfg;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw CLI::ValidationError("--out", "cannot write " + path);
  os.precision(17);
  return os;
}

struct Setup {
  ProblemInstance problem;
  Graph graph;
  MixingMatrix w;
  Eigen::MatrixXd x0;
};

Setup make_setup(const ExperimentConfig& cfg, double kappa) {
  Setup s{ProblemInstance{}, generate_random_connected(cfg.n_agents, kappa, cfg.seed),
          MixingMatrix{}, Eigen::MatrixXd{}};
  s.w = metropolis_hastings(s.graph);
  if (cfg.family == "huber") {
    HuberInstance h = generate_huber_instance(cfg.n_agents, cfg.dim, cfg.xi, cfg.seed);
    s.problem = std::move(h.problem);
    s.x0 = std::move(h.x_init);
  } else {
    s.problem = generate_ls_instance(cfg.n_agents, cfg.dim, 5, 30, cfg.seed);
    s.x0 = Eigen::MatrixXd::Zero(cfg.n_agents, cfg.dim);
  }
  return s;
}

void print_summary(const RunRecord& r) {
  std::cout << "algorithm: " << r.algorithm << "\n"
            << "iterations: " << r.iterations << "\n"
            << "converged: " << (r.converged ? "yes" : "no") << "\n"
            << "final_rse: " << r.final_rse() << "\n"
            << "bytes_per_agent: " << r.bytes_per_agent << "\n"
            << "seconds_per_agent: " << r.seconds_per_agent << "\n";
  for (const auto& [k, v] : r.params) std::cout << k << ": " << v << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed conjugate gradient testbed"};
  app.require_subcommand(1);
  std::cout.precision(12);

  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "Generate a random connected graph");
  int g_n = 50;
  double g_kappa = 1.0;
  std::uint64_t g_seed = 0;
  bool g_lambda = false;
  graph_cmd->add_option("--n", g_n, "Number of agents");
  graph_cmd->add_option("--kappa", g_kappa, "Connectivity ratio target");
  graph_cmd->add_option("--seed", g_seed, "Generation seed");
  graph_cmd->add_option("--out", out_path, "Edge-list output file (default stdout)");
  graph_cmd->add_flag("--lambda", g_lambda, "Also print the Metropolis-Hastings spectral gap");

  // solve-central
  auto* central_cmd = app.add_subcommand("solve-central", "Centralized CG on one instance");
  std::string c_scheme = "fr";
  double c_tol = 1e-10;
  int c_max_iter = 10000;
  central_cmd->add_option("--config", config_path, "Experiment config file");
  central_cmd->add_option("--seed", seed, "Seed override");
  central_cmd->add_option("--scheme", c_scheme, "Beta scheme: hs|fr|pr|pr_plus");
  central_cmd->add_option("--tol", c_tol, "Gradient-norm stopping tolerance");
  central_cmd->add_option("--max-iter", c_max_iter, "Iteration cap");

  // run
  auto* run_cmd = app.add_subcommand("run", "One distributed run on one instance");
  std::string r_algo = "dc_grad";
  std::optional<double> r_kappa;
  run_cmd->add_option("--algo", r_algo, "dc_grad|vanilla_cg|diging_atc|ab_push_pull|abm|c_admm");
  run_cmd->add_option("--config", config_path, "Experiment config file");
  run_cmd->add_option("--seed", seed, "Seed override");
  run_cmd->add_option("--kappa", r_kappa, "Connectivity ratio (default: first in config)");
  run_cmd->add_option("--out", out_path, "RSE trace CSV output file");

  // tune
  auto* tune_cmd = app.add_subcommand("tune", "Golden-section parameter tuning");
  std::string t_algo = "dc_grad";
  std::optional<double> t_kappa;
  tune_cmd->add_option("--algo", t_algo, "Algorithm to tune");
  tune_cmd->add_option("--config", config_path, "Experiment config file");
  tune_cmd->add_option("--seed", seed, "Seed override");
  tune_cmd->add_option("--kappa", t_kappa, "Connectivity ratio (default: first in config)");
  tune_cmd->add_option("--out", out_path, "Evaluation log CSV output file");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Full experiment sweep with table outputs");
  std::string b_out = "bench_out";
  bench_cmd->add_option("--config", config_path, "Experiment config file");
  bench_cmd->add_option("--seed", seed, "Seed override");
  bench_cmd->add_option("--out", b_out, "Output directory");

  // diagnose
  auto* diag_cmd = app.add_subcommand("diagnose", "DC-Grad run with invariant diagnostics");
  std::optional<double> d_kappa;
  diag_cmd->add_option("--config", config_path, "Experiment config file");
  diag_cmd->add_option("--seed", seed, "Seed override");
  diag_cmd->add_option("--kappa", d_kappa, "Connectivity ratio (default: first in config)");
  diag_cmd->add_option("--out", out_path, "Diagnostics CSV output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (graph_cmd->parsed()) {
      Graph g = generate_random_connected(g_n, g_kappa, g_seed);
      if (out_path.empty()) {
        g.save(std::cout);
      } else {
        std::ofstream os = open_out(out_path);
        g.save(os);
      }
      std::cerr << "kappa: " << connectivity_ratio(g) << "\n";
      if (g_lambda) std::cerr << "lambda: " << metropolis_hastings(g).lambda << "\n";
      return 0;
    }

    if (central_cmd->parsed()) {
      ExperimentConfig cfg = load_config(config_path, seed);
      Setup s = make_setup(cfg, cfg.kappas.empty() ? 1.0 : cfg.kappas.front());
      BetaScheme scheme = BetaScheme::parse(c_scheme);
      CgResult r = cg_minimize(
          s.problem.aggregate_oracle(),
          cfg.family == "huber" ? HessVec{} : s.problem.aggregate_hess_vec(),
          Eigen::VectorXd::Zero(cfg.dim), scheme,
          cfg.family == "huber" ? StepRule::backtracking(1.0) : StepRule::exact_quadratic(),
          c_tol, c_max_iter);
      std::cout << "iterations: " << r.iterations << "\n"
                << "converged: " << (r.converged ? "yes" : "no") << "\n"
                << "grad_norm: " << r.grad_norms.back() << "\n"
                << "rse_vs_x_star: " << (r.x - s.problem.x_star).norm() / s.problem.x_star.norm()
                << "\n";
      return 0;
    }

    if (run_cmd->parsed() || tune_cmd->parsed() || diag_cmd->parsed()) {
      ExperimentConfig cfg = load_config(config_path, seed);
      std::optional<double> kap = run_cmd->parsed() ? r_kappa
                                : tune_cmd->parsed() ? t_kappa
                                                     : d_kappa;
      double kappa = kap ? *kap : (cfg.kappas.empty() ? 1.0 : cfg.kappas.front());
      Setup s = make_setup(cfg, kappa);

      if (tune_cmd->parsed()) {
        std::vector<std::pair<double, double>> log;
        TunedParams best = tune_algorithm(parse_algo(t_algo), s.problem, s.graph, s.w,
                                          cfg.scheme, s.x0, cfg.tol, cfg.max_iter,
                                          cfg.tune_evals, &log);
        std::cout << "best_param: " << best.alpha << "\n";
        if (parse_algo(t_algo) == Algo::abm) std::cout << "gamma: " << best.gamma << "\n";
        std::cout << "best_score: " << best.score << "\n";
        if (!out_path.empty()) {
          std::ofstream os = open_out(out_path);
          os << "# tune_log v1\nparam,score\n";
          for (const auto& [p, v] : log) os << p << "," << v << "\n";
        }
        return 0;
      }

      if (diag_cmd->parsed()) {
        ExperimentConfig one = cfg;
        IterateTrace trace;
        RunRecord rec = run_tuned(Algo::dc_grad, s.problem, s.graph, s.w, one, s.x0, &trace);
        print_summary(rec);
        int violations = 0, checks = 0;
        for (int k = 1; k + 1 < trace.length(); ++k)
          for (const BoundCheck& c : lemma1_check(trace, k, s.w.lambda, s.problem.lipschitz())) {
            ++checks;
            if (!c.satisfied) ++violations;
          }
        std::cout << "bound_checks: " << checks << "\nbound_violations: " << violations << "\n";
        if (!out_path.empty()) {
          std::ofstream os = open_out(out_path);
          write_diagnostics_csv(os, trace);
        }
        return 0;
      }

      RunRecord rec = run_tuned(parse_algo(r_algo), s.problem, s.graph, s.w, cfg, s.x0);
      print_summary(rec);
      if (!out_path.empty()) {
        std::ofstream os = open_out(out_path);
        os << "# rse_trace v1\niteration,rse_max,rse_min\n";
        for (std::size_t i = 0; i < rec.rse_max.size(); ++i)
          os << i << "," << rec.rse_max[i] << "," << rec.rse_min[i] << "\n";
      }
      return 0;
    }

    if (bench_cmd->parsed()) {
      ExperimentConfig cfg = load_config(config_path, seed);
      ExperimentResults res = run_experiment(cfg);
      emit_outputs(res, b_out);
      std::cout << "runs: " << res.records.size() << "\nfailures: " << res.failures.size()
                << "\nout: " << b_out << "\n";
      for (const auto& f : res.failures) std::cerr << "failure: " << f << "\n";
      return res.failures.empty() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
