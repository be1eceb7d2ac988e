#include "dcg/tuning.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dcg/baselines.hpp"
#include "dcg/dcgrad.hpp"
#include "dcg/errors.hpp"

namespace dcg {

GoldenResult golden_section(const std::function<double(double)>& score, double lo,
                            double hi, double tol_interval, int max_evals) {
  if (lo > hi) throw std::invalid_argument("golden_section: lo > hi");
  if (tol_interval <= 0.0) throw std::invalid_argument("golden_section: tol_interval must be positive");

  GoldenResult res;
  auto eval = [&](double x) {
    double v = score(x);
    ++res.evaluations;
    res.log.emplace_back(x, v);
    if (res.log.size() == 1 || v < res.best_score) {
      res.best_score = v;
      res.best_param = x;
    }
    return v;
  };

  if (lo == hi) {
    eval(lo);
    return res;
  }

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > tol_interval) {
    if (res.evaluations >= max_evals) {
      res.budget_exhausted = true;
      return res;
    }
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = eval(d);
    }
  }
  // Report the bracket midpoint when it is at least as good as anything seen.
  double mid = 0.5 * (a + b);
  double fm = eval(mid);
  if (fm <= res.best_score) {
    res.best_param = mid;
    res.best_score = fm;
  }
  return res;
}

std::string algo_name(Algo a) {
  switch (a) {
    case Algo::dc_grad: return "dc_grad";
    case Algo::vanilla_cg: return "vanilla_cg";
    case Algo::diging_atc: return "diging_atc";
    case Algo::ab_push_pull: return "ab_push_pull";
    case Algo::abm: return "abm";
    case Algo::c_admm: return "c_admm";
  }
  return "?";
}

Algo parse_algo(const std::string& name) {
  if (name == "dc_grad") return Algo::dc_grad;
  if (name == "vanilla_cg") return Algo::vanilla_cg;
  if (name == "diging_atc") return Algo::diging_atc;
  if (name == "ab_push_pull") return Algo::ab_push_pull;
  if (name == "abm") return Algo::abm;
  if (name == "c_admm") return Algo::c_admm;
  throw std::invalid_argument("unknown algorithm: " + name);
}

namespace {

double penalized_score(const RunRecord& rec, double tol_rse, int max_iter) {
  if (rec.converged) return static_cast<double>(rec.iterations);
  return static_cast<double>(max_iter) +
         100.0 * std::log10(1.0 + rec.final_rse() / tol_rse);
}

}  // namespace

TunedParams tune_algorithm(Algo algo, const ProblemInstance& problem, const Graph& g,
                           const MixingMatrix& w, const BetaScheme& scheme,
                           const Eigen::MatrixXd& x0, double tol_rse, int max_iter,
                           int max_evals, std::vector<std::pair<double, double>>* log) {
  const double diverged = static_cast<double>(max_iter) + 1e6;
  const int n_agents = problem.n_agents();

  auto score_with = [&](Algo a, double param, double gamma) {
    try {
      RunRecord rec;
      switch (a) {
        case Algo::dc_grad:
          rec = run_dcgrad(problem, g, w, Eigen::VectorXd::Constant(n_agents, param),
                           scheme, tol_rse, max_iter, x0);
          break;
        case Algo::vanilla_cg:
          rec = run_vanilla_cg(problem, g, w, Eigen::VectorXd::Constant(n_agents, param),
                               scheme, tol_rse, max_iter, x0);
          break;
        case Algo::diging_atc:
          rec = run_diging_atc(problem, g, w, param, tol_rse, max_iter, x0);
          break;
        case Algo::ab_push_pull:
          rec = run_ab_push_pull(problem, g, w, param, tol_rse, max_iter, x0);
          break;
        case Algo::abm:
          rec = run_abm(problem, g, w, param, gamma, tol_rse, max_iter, x0);
          break;
        case Algo::c_admm:
          rec = run_c_admm(problem, g, param, tol_rse, max_iter, x0);
          break;
      }
      return penalized_score(rec, tol_rse, max_iter);
    } catch (const divergence_error&) {
      return diverged;
    }
  };

  double lo = 1e-5, hi = 2.0 / problem.lipschitz();
  if (algo == Algo::c_admm) {
    lo = 1e-3;
    hi = 1e2;
  }

  // The penalty parameter spans five decades and its score is only unimodal
  // on a logarithmic axis, so the rho search runs in log10 space.
  const bool log_scale = algo == Algo::c_admm;

  TunedParams best;
  bool have_best = false;
  auto consider = [&](double gamma) {
    double a = log_scale ? std::log10(lo) : lo;
    double b = log_scale ? std::log10(hi) : hi;
    auto fn = [&](double p) {
      return score_with(algo, log_scale ? std::pow(10.0, p) : p, gamma);
    };
    GoldenResult r = golden_section(fn, a, b, (b - a) * 1e-3, max_evals);
    if (log_scale) {
      r.best_param = std::pow(10.0, r.best_param);
      for (auto& e : r.log) e.first = std::pow(10.0, e.first);
    }
    if (log) log->insert(log->end(), r.log.begin(), r.log.end());
    if (!have_best || r.best_score < best.score) {
      best = {r.best_param, gamma, r.best_score};
      have_best = true;
    }
  };

  if (algo == Algo::abm) {
    for (double gamma = 0.1; gamma < 0.95; gamma += 0.1) consider(gamma);
  } else {
    consider(0.0);
  }

  if (best.score >= static_cast<double>(max_iter)) {
    std::ostringstream msg;
    msg << "tune_algorithm(" << algo_name(algo) << "): no evaluation converged;"
        << " best score " << best.score << " at param " << best.alpha;
    throw tuning_error(msg.str());
  }
  return best;
}

}  // namespace dcg
