#include "dcg/harness.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dcg/errors.hpp"

namespace dcg {

namespace {

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, delim)) {
    // trim
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::string format_mean_std(double mean, double std) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << mean << " +/- " << std;
  return os.str();
}

}  // namespace

ExperimentConfig ExperimentConfig::defaults_for(const std::string& family) {
  ExperimentConfig cfg;
  cfg.family = family;
  if (family == "huber") {
    cfg.kappas = {0.42, 0.74, 0.96, 1.00};
    cfg.max_iter = 3000;
    cfg.scheme = BetaScheme::clamped(BetaScheme::Kind::polak_ribiere, 0.5);
    cfg.algorithms = {Algo::dc_grad, Algo::diging_atc, Algo::ab_push_pull, Algo::abm};
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::parse(std::istream& is) {
  ExperimentConfig cfg;
  bool family_seen = false;
  std::string line;
  std::vector<std::pair<std::string, std::string>> kvs;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto keys = split(line.substr(0, eq), ',');
    if (keys.size() != 1) throw std::invalid_argument("config: bad key in: " + line);
    auto vals = split(line.substr(eq + 1), '\n');
    kvs.emplace_back(keys[0], vals.empty() ? "" : vals[0]);
  }
  for (const auto& [key, value] : kvs) {
    if (key == "family") {
      cfg = defaults_for(value);
      family_seen = true;
    }
  }
  if (!family_seen) cfg = defaults_for("ls");
  for (const auto& [key, value] : kvs) {
    if (key == "family") {
    } else if (key == "n_agents") {
      cfg.n_agents = std::stoi(value);
    } else if (key == "dim") {
      cfg.dim = std::stoi(value);
    } else if (key == "xi") {
      cfg.xi = std::stod(value);
    } else if (key == "kappas") {
      cfg.kappas.clear();
      for (const auto& k : split(value, ',')) cfg.kappas.push_back(std::stod(k));
    } else if (key == "trials") {
      cfg.trials = std::stoi(value);
    } else if (key == "tol") {
      cfg.tol = std::stod(value);
    } else if (key == "max_iter") {
      cfg.max_iter = std::stoi(value);
    } else if (key == "algorithms") {
      cfg.algorithms.clear();
      for (const auto& a : split(value, ',')) cfg.algorithms.push_back(parse_algo(a));
    } else if (key == "beta_scheme") {
      bool clamp = cfg.scheme.clamp;
      double cap = cfg.scheme.cap;
      cfg.scheme = BetaScheme::parse(value);
      cfg.scheme.clamp = clamp;
      cfg.scheme.cap = cap;
    } else if (key == "beta_cap") {
      cfg.scheme.clamp = true;
      cfg.scheme.cap = std::stod(value);
    } else if (key == "seed") {
      cfg.seed = std::stoull(value);
    } else if (key == "tune_evals") {
      cfg.tune_evals = std::stoi(value);
    } else {
      throw std::invalid_argument("config: unknown key: " + key);
    }
  }
  return cfg;
}

void ExperimentConfig::write(std::ostream& os) const {
  os << "family = " << family << "\n";
  os << "n_agents = " << n_agents << "\n";
  os << "dim = " << dim << "\n";
  os << "xi = " << xi << "\n";
  os << "kappas = ";
  for (std::size_t i = 0; i < kappas.size(); ++i) os << (i ? "," : "") << kappas[i];
  os << "\n";
  os << "trials = " << trials << "\n";
  os << "tol = " << tol << "\n";
  os << "max_iter = " << max_iter << "\n";
  os << "algorithms = ";
  for (std::size_t i = 0; i < algorithms.size(); ++i)
    os << (i ? "," : "") << algo_name(algorithms[i]);
  os << "\n";
  os << "beta_scheme = " << scheme.name() << "\n";
  os << "seed = " << seed << "\n";
  os << "tune_evals = " << tune_evals << "\n";
}

int vectors_per_message(Algo a) { return a == Algo::c_admm ? 1 : 2; }

double message_bytes_per_agent(Algo a, const Graph& g, int n, int iterations) {
  double total = 0.0;
  for (int i = 0; i < g.n_agents(); ++i)
    total += 8.0 * n * vectors_per_message(a) * g.degree(i) * iterations;
  return total / g.n_agents();
}

Eigen::MatrixXd initial_iterates(const ProblemInstance& problem,
                                 const Eigen::MatrixXd* huber_init) {
  if (huber_init) return *huber_init;
  return Eigen::MatrixXd::Zero(problem.n_agents(), problem.dim());
}

RunRecord run_tuned(Algo algo, const ProblemInstance& problem, const Graph& g,
                    const MixingMatrix& w, const ExperimentConfig& cfg,
                    const Eigen::MatrixXd& x0, IterateTrace* trace) {
  TunedParams tp = tune_algorithm(algo, problem, g, w, cfg.scheme, x0, cfg.tol,
                                  cfg.max_iter, cfg.tune_evals);
  const int n_agents = problem.n_agents();
  auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  switch (algo) {
    case Algo::dc_grad:
      rec = run_dcgrad(problem, g, w, Eigen::VectorXd::Constant(n_agents, tp.alpha),
                       cfg.scheme, cfg.tol, cfg.max_iter, x0, trace);
      break;
    case Algo::vanilla_cg:
      rec = run_vanilla_cg(problem, g, w, Eigen::VectorXd::Constant(n_agents, tp.alpha),
                           cfg.scheme, cfg.tol, cfg.max_iter, x0);
      break;
    case Algo::diging_atc:
      rec = run_diging_atc(problem, g, w, tp.alpha, cfg.tol, cfg.max_iter, x0);
      break;
    case Algo::ab_push_pull:
      rec = run_ab_push_pull(problem, g, w, tp.alpha, cfg.tol, cfg.max_iter, x0);
      break;
    case Algo::abm:
      rec = run_abm(problem, g, w, tp.alpha, tp.gamma, cfg.tol, cfg.max_iter, x0);
      break;
    case Algo::c_admm:
      rec = run_c_admm(problem, g, tp.alpha, cfg.tol, cfg.max_iter, x0);
      break;
  }
  auto t1 = std::chrono::steady_clock::now();
  rec.seconds_per_agent =
      std::chrono::duration<double>(t1 - t0).count() / static_cast<double>(n_agents);
  rec.bytes_per_agent = message_bytes_per_agent(algo, g, problem.dim(), rec.iterations);
  rec.params[algo == Algo::c_admm ? "rho" : "alpha"] = tp.alpha;
  if (algo == Algo::abm) rec.params["gamma"] = tp.gamma;
  rec.seed = problem.seed;
  rec.kappa = connectivity_ratio(g);
  return rec;
}

ExperimentResults run_experiment(const ExperimentConfig& cfg) {
  ExperimentResults results;
  results.config = cfg;
  for (std::size_t ki = 0; ki < cfg.kappas.size(); ++ki) {
    for (int trial = 0; trial < cfg.trials; ++trial) {
      std::uint64_t run_seed = cfg.seed + 1000 * ki + trial;
      try {
        Graph g = generate_random_connected(cfg.n_agents, cfg.kappas[ki], run_seed);
        MixingMatrix w = metropolis_hastings(g);
        ProblemInstance problem;
        Eigen::MatrixXd x0;
        if (cfg.family == "huber") {
          HuberInstance h = generate_huber_instance(cfg.n_agents, cfg.dim, cfg.xi, run_seed);
          problem = std::move(h.problem);
          x0 = std::move(h.x_init);
        } else {
          problem = generate_ls_instance(cfg.n_agents, cfg.dim, 5, 30, run_seed);
          x0 = initial_iterates(problem, nullptr);
        }
        for (Algo algo : cfg.algorithms) {
          try {
            results.records.push_back(run_tuned(algo, problem, g, w, cfg, x0));
          } catch (const std::exception& e) {
            results.failures.push_back(algo_name(algo) + " kappa=" +
                                       std::to_string(cfg.kappas[ki]) + " trial=" +
                                       std::to_string(trial) + ": " + e.what());
          }
        }
      } catch (const std::exception& e) {
        results.failures.push_back("setup kappa=" + std::to_string(cfg.kappas[ki]) +
                                   " trial=" + std::to_string(trial) + ": " + e.what());
      }
    }
  }
  return results;
}

namespace {

struct MeanStd {
  double mean = 0.0, std = 0.0;
  int count = 0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd ms;
  ms.count = static_cast<int>(xs.size());
  if (xs.empty()) return ms;
  for (double x : xs) ms.mean += x;
  ms.mean /= ms.count;
  for (double x : xs) ms.std += (x - ms.mean) * (x - ms.mean);
  ms.std = ms.count > 1 ? std::sqrt(ms.std / (ms.count - 1)) : 0.0;
  return ms;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

std::string kappa_tag(double kappa) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << kappa;
  std::string s = os.str();
  for (auto& c : s)
    if (c == '.') c = 'p';
  return s;
}

}  // namespace

void emit_outputs(const ExperimentResults& results, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir))
    throw std::runtime_error("emit_outputs: cannot create output directory " + out_dir);

  const auto& cfg = results.config;
  auto open = [&](const std::string& name) {
    std::ofstream os(fs::path(out_dir) / name);
    if (!os) throw std::runtime_error("emit_outputs: cannot write " + name);
    os.precision(17);
    return os;
  };

  // Tables: one row per algorithm, one value column per kappa.
  for (const char* which : {"time", "bytes"}) {
    std::ofstream os = open(std::string("table_") + which + ".csv");
    os << "# table v1: " << which << " per agent, mean +/- std over trials\n";
    os << "algorithm";
    for (double k : cfg.kappas) os << ",kappa=" << kappa_tag(k);
    os << "\n";
    for (Algo algo : cfg.algorithms) {
      os << algo_name(algo);
      for (double k : cfg.kappas) {
        std::vector<double> vals;
        for (const auto& rec : results.records)
          if (rec.algorithm == algo_name(algo) && std::abs(rec.kappa - k) < 5e-3)
            vals.push_back(std::string(which) == "time" ? rec.seconds_per_agent
                                                        : rec.bytes_per_agent / 1e6);
        MeanStd ms = mean_std(vals);
        os << "," << csv_quote(format_mean_std(ms.mean, ms.std));
      }
      os << "\n";
    }
  }

  // RSE traces for the first trial of each (algorithm, kappa).
  for (Algo algo : cfg.algorithms) {
    for (double k : cfg.kappas) {
      const RunRecord* first = nullptr;
      for (const auto& rec : results.records)
        if (rec.algorithm == algo_name(algo) && std::abs(rec.kappa - k) < 5e-3) {
          first = &rec;
          break;
        }
      if (!first) continue;
      std::ofstream os = open("rse_trace_" + algo_name(algo) + "_" + kappa_tag(k) + ".csv");
      os << "# rse_trace v1\n";
      os << "iteration,rse_max,rse_min\n";
      for (std::size_t i = 0; i < first->rse_max.size(); ++i)
        os << i << "," << first->rse_max[i] << "," << first->rse_min[i] << "\n";
    }
  }

  {
    std::ofstream os = open("manifest.txt");
    os << "# manifest v1\n";
    cfg.write(os);
    os << "note = xi and the huber observation-noise scale (0.1*xi) are choices,"
          " echoed here for replay\n";
    for (const auto& rec : results.records) {
      os << "run " << rec.algorithm << " kappa=" << kappa_tag(rec.kappa)
         << " seed=" << rec.seed << " iterations=" << rec.iterations
         << " converged=" << (rec.converged ? 1 : 0);
      for (const auto& [k, v] : rec.params) os << " " << k << "=" << v;
      os << "\n";
    }
    for (const auto& f : results.failures) os << "failure " << f << "\n";
  }

  {
    std::ofstream os = open("plots.plt");
    os << "set logscale y\nset xlabel 'iteration'\nset ylabel 'RSE'\n";
    os << "set datafile separator ','\n";
    for (double k : cfg.kappas) {
      os << "plot ";
      bool first = true;
      for (Algo algo : cfg.algorithms) {
        if (!first) os << ", ";
        os << "'rse_trace_" << algo_name(algo) << "_" << kappa_tag(k)
           << ".csv' skip 2 using 1:2 with lines title '" << algo_name(algo) << "'";
        first = false;
      }
      os << "\npause -1\n";
    }
  }
}

}  // namespace dcg
