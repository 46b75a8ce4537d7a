#pragma once

#include <utility>
#include <vector>

#include "qsep/criteria.hpp"
#include "qsep/states.hpp"

namespace qsep {

struct OptimizerConfig {
  int n = 2, m = 2;          // mu and nu lengths
  int restarts = 8;          // independent simplex restarts
  int max_iters = 400;       // Nelder-Mead iterations per restart
  double init_scale = 1.0;   // Gaussian init scale; a second band runs at 10x
  Seed seed{1};
  double tol = 1e-10;        // simplex spread convergence tolerance
};

struct OptimizationResult {
  ParamPair best;
  double margin = 0.0;
  long evaluations = 0;
  // Best-so-far samples (cumulative iteration, margin), non-decreasing.
  std::vector<std::pair<long, double>> trace;
  bool budget_exhausted = false;  // some restart stopped on max_iters
};

// Detection margin |Q_{mu,nu}(rho)|_tr - sqrt((|mu|^2+1)(|nu|^2+1)).
double evaluate_objective(const DensityMatrix& rho, const ParamPair& p);

// Nelder-Mead over the concatenated (n+m)-vector, maximizing the margin.
// Restarts draw Gaussian starting points: the first half at init_scale, the
// second half at 10x. Deterministic for a fixed seed; ties between restarts
// resolve to the lower restart index.
OptimizationResult optimize_params(const DensityMatrix& rho, const OptimizerConfig& cfg);

}  // namespace qsep
