#include "qsep/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qsep/errors.hpp"
#include "qsep/rng.hpp"

namespace qsep {

double evaluate_objective(const DensityMatrix& rho, const ParamPair& p) {
  return theorem1_margin(rho, p).margin;
}

namespace {

ParamPair unpack(const std::vector<double>& x, int n, int m) {
  ParamPair p;
  p.mu.assign(x.begin(), x.begin() + n);
  p.nu.assign(x.begin() + n, x.begin() + n + m);
  return p;
}

struct RestartOutcome {
  std::vector<double> best_x;
  double best_f = -std::numeric_limits<double>::infinity();
  long evaluations = 0;
  bool hit_budget = false;
  // (evaluation index within this restart, margin) whenever the best improves.
  std::vector<std::pair<long, double>> improvements;
};

RestartOutcome run_restart(const DensityMatrix& rho, const OptimizerConfig& cfg,
                           int restart_index) {
  const int n = cfg.n, m = cfg.m;
  const int dim = n + m;
  const double scale =
      (restart_index < (cfg.restarts + 1) / 2) ? cfg.init_scale : 10.0 * cfg.init_scale;

  Rng rng = Rng::split(cfg.seed.value ^ (kStreamOptimizer * 0x9E3779B97F4A7C15ULL),
                       static_cast<uint64_t>(restart_index));

  RestartOutcome out;
  auto eval = [&](const std::vector<double>& x) {
    double f = evaluate_objective(rho, unpack(x, n, m));
    ++out.evaluations;
    if (f > out.best_f) {
      out.best_f = f;
      out.best_x = x;
      out.improvements.emplace_back(out.evaluations, f);
    }
    return f;
  };

  // Initial simplex: a Gaussian centre plus coordinate steps.
  std::vector<std::vector<double>> pts(dim + 1, std::vector<double>(dim));
  for (int j = 0; j < dim; ++j) pts[0][j] = scale * rng.next_gaussian();
  for (int i = 1; i <= dim; ++i) {
    pts[i] = pts[0];
    pts[i][i - 1] += scale;
  }
  std::vector<double> fv(dim + 1);
  for (int i = 0; i <= dim; ++i) fv[i] = eval(pts[i]);

  const double alpha = 1.0, gamma = 2.0, rho_c = 0.5, sigma = 0.5;
  bool converged = false;
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    // Order: we maximize, so "best" is the largest value.
    std::vector<int> ord(dim + 1);
    for (int i = 0; i <= dim; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](int a, int b) {
      if (fv[a] != fv[b]) return fv[a] > fv[b];
      return a < b;
    });
    const int ib = ord[0], iw = ord[dim], isw = ord[dim - 1];

    if (std::abs(fv[ib] - fv[iw]) <= cfg.tol) {
      converged = true;
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (int i = 0; i <= dim; ++i) {
      if (i == iw) continue;
      for (int j = 0; j < dim; ++j) centroid[j] += pts[i][j];
    }
    for (int j = 0; j < dim; ++j) centroid[j] /= dim;

    auto blend = [&](double t) {
      std::vector<double> x(dim);
      for (int j = 0; j < dim; ++j) x[j] = centroid[j] + t * (centroid[j] - pts[iw][j]);
      return x;
    };

    std::vector<double> xr = blend(alpha);
    double fr = eval(xr);
    if (fr > fv[ib]) {
      std::vector<double> xe = blend(gamma);
      double fe = eval(xe);
      if (fe > fr) {
        pts[iw] = xe;
        fv[iw] = fe;
      } else {
        pts[iw] = xr;
        fv[iw] = fr;
      }
    } else if (fr > fv[isw]) {
      pts[iw] = xr;
      fv[iw] = fr;
    } else {
      std::vector<double> xc = blend(-rho_c);
      double fc = eval(xc);
      if (fc > fv[iw]) {
        pts[iw] = xc;
        fv[iw] = fc;
      } else {
        for (int i = 0; i <= dim; ++i) {
          if (i == ib) continue;
          for (int j = 0; j < dim; ++j)
            pts[i][j] = pts[ib][j] + sigma * (pts[i][j] - pts[ib][j]);
          fv[i] = eval(pts[i]);
        }
      }
    }
  }
  out.hit_budget = !converged;
  return out;
}

}  // namespace

OptimizationResult optimize_params(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  if (cfg.n < 1 || cfg.m < 1)
    fail(Err::ParamOutOfRange, "optimizer vector lengths must be at least 1, got n=" +
                                   std::to_string(cfg.n) + " m=" + std::to_string(cfg.m));
  if (cfg.restarts < 1)
    fail(Err::ParamOutOfRange,
         "optimizer restarts must be at least 1, got " + std::to_string(cfg.restarts));
  if (cfg.max_iters < 1)
    fail(Err::ParamOutOfRange,
         "optimizer max_iters must be at least 1, got " + std::to_string(cfg.max_iters));
  if (!(cfg.init_scale > 0.0))
    fail(Err::ParamOutOfRange, "optimizer init_scale must be positive");
  if (!(cfg.tol > 0.0)) fail(Err::TolTooSmall, "optimizer tol must be positive");

  std::vector<RestartOutcome> outs(cfg.restarts);
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < cfg.restarts; ++r) outs[r] = run_restart(rho, cfg, r);

  OptimizationResult res;
  res.margin = -std::numeric_limits<double>::infinity();
  long offset = 0;
  double best_so_far = -std::numeric_limits<double>::infinity();
  int best_restart = -1;
  // Fixed-order reduction over restarts keeps the result thread-count
  // independent; strict > ties to the lowest restart index.
  for (int r = 0; r < cfg.restarts; ++r) {
    for (const auto& [ev, f] : outs[r].improvements) {
      if (f > best_so_far) {
        best_so_far = f;
        res.trace.emplace_back(offset + ev, f);
      }
    }
    if (outs[r].best_f > res.margin) {
      res.margin = outs[r].best_f;
      best_restart = r;
    }
    res.evaluations += outs[r].evaluations;
    if (outs[r].hit_budget) res.budget_exhausted = true;
    offset += outs[r].evaluations;
  }
  res.best = unpack(outs[best_restart].best_x, cfg.n, cfg.m);
  return res;
}

}  // namespace qsep
