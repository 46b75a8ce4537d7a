#pragma once

#include <array>
#include <vector>

#include "qsep/criteria.hpp"
#include "qsep/density.hpp"
#include "qsep/measures.hpp"

namespace qsep {

// One party against the rest; the complement keeps ascending original order
// (solo=1 on three parties means factor order (1),(0,2)). Indices 0-based.
struct Bipartition {
  int solo = 0;
  std::vector<int> rest;

  static Bipartition of(int solo, int parties);
};

// Parameter vectors mu_q..mu_{n-1} for the n-party construction; q is the
// 0-based index of the first augmented party (q <= n-2).
struct MuFamily {
  int q = 0;
  std::vector<std::vector<double>> vectors;
};

// Tensor factors reordered: perm[p] = original subsystem placed at slot p.
DensityMatrix permute_systems(const DensityMatrix& rho, const std::vector<int>& perm);

// Trace norm of the augmented realignment matrix for the solo|rest cut,
// with the solo party first and the complement merged into one factor.
double bipartition_q_norm(const DensityMatrix& rho, const Bipartition& b, const ParamPair& p);

// Mean of the three bipartition norms of a tripartite state.
double script_q_average(const DensityMatrix& rho, const ParamPair& p);

// lhs = script Q average, rhs = sqrt((|mu|^2+1)(|nu|^2+1)) + 2(d-1)/3 with all
// local dimensions equal to d. ENTANGLED here certifies genuine tripartite
// entanglement (biseparable mixtures never exceed the bound).
CriterionReport biseparability_margin(const DensityMatrix& rho, const ParamPair& p,
                                      double tau = kTauDetect);

// n-party augmented realignment, assembled by the subset expansion over the
// augmented parties q..n-1 (no product decomposition required; the map is
// linear in rho). Party count capped at 6.
ComplexMatrix generalized_qr(const DensityMatrix& rho, const MuFamily& fam);

// lhs = |QR|_tr, rhs = prod_k sqrt(|mu_k|^2+1). ENTANGLED means the state is
// not fully separable.
CriterionReport full_separability_margin(const DensityMatrix& rho, const MuFamily& fam,
                                         double tau = kTauDetect);

// (script Q - bisep bound) / sqrt(d(d-1)): lower bound on GME concurrence.
BoundReport gme_concurrence_lower_bound(const DensityMatrix& rho, const ParamPair& p);

}  // namespace qsep
