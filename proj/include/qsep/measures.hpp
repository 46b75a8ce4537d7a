#pragma once

#include <string>
#include <vector>

#include "qsep/criteria.hpp"
#include "qsep/density.hpp"

namespace qsep {

// Lower-bound report. `bound` is returned unclamped: a nonpositive value
// certifies nothing and is flagged `vacuous`, but comparisons between
// criteria need the raw number.
struct BoundReport {
  std::string measure;
  double bound = 0.0;
  ParamPair params;
  int d = 2;  // min local dimension
  bool vacuous = false;
};

// sqrt(2 (1 - Tr rho_A^2)) for a normalized pure state.
double concurrence_pure(const std::vector<cplx>& psi, int d_A, int d_B);

// (|psi_proj^{T_B}|_tr - 1)/(d-1); equals 2/(d-1) sum_{i<j} sqrt(l_i l_j)
// over Schmidt coefficients.
double negativity_pure(const std::vector<cplx>& psi, int d_A, int d_B);

// Concurrence lower bound:
//   sqrt(2/(d(d-1))) * (|Q|_tr - sqrt((|mu|^2+1)(|nu|^2+1))).
BoundReport concurrence_lower_bound(const DensityMatrix& rho, const ParamPair& p);

// CREN lower bound: (|Q|_tr - sqrt((|mu|^2+1)(|nu|^2+1))) / (d-1).
BoundReport cren_lower_bound(const DensityMatrix& rho, const ParamPair& p);

}  // namespace qsep
