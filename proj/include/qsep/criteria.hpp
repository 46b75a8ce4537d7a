#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qsep/density.hpp"
#include "qsep/states.hpp"

namespace qsep {

// Default detection threshold on the margin: separates singular-value
// round-off from genuine violations at fixture sizes. CLI-configurable.
constexpr double kTauDetect = 1e-9;

struct ParamPair {
  std::vector<double> mu, nu;
};

enum class Verdict { ENTANGLED, INCONCLUSIVE };

inline const char* verdict_name(Verdict v) {
  return v == Verdict::ENTANGLED ? "ENTANGLED" : "INCONCLUSIVE";
}

struct CriterionReport {
  std::string criterion;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
  double tau = kTauDetect;
  Verdict verdict = Verdict::INCONCLUSIVE;
};

CriterionReport make_report(const std::string& name, double lhs, double rhs, double tau);

// Augmented realignment block matrix
//   [ mu nu^T Tr(rho)   mu Vec(rho_B)^T ]
//   [ Vec(rho_A) nu^T   R(rho)          ]
// of shape (n + d_A^2) x (m + d_B^2). The Tr(rho) factor keeps the map linear
// in rho, so it coincides with the n-party generalization at every input.
ComplexMatrix build_q_matrix(const DensityMatrix& rho, const ParamPair& p);

// Separability bound sqrt((|mu|^2+1)(|nu|^2+1)) for the augmented matrix.
double q_bound(const ParamPair& p);

// lhs = trace norm of the augmented matrix, rhs = q_bound. A margin above tau
// certifies entanglement; separable states never exceed the bound.
CriterionReport theorem1_margin(const DensityMatrix& rho, const ParamPair& p,
                                double tau = kTauDetect);

// Plain realignment test: |R(rho)|_tr <= 1 on separable states.
CriterionReport ccnr_margin(const DensityMatrix& rho, double tau = kTauDetect);

// Covariance-style realignment test:
// |R(rho - rho_A x rho_B)|_tr <= sqrt((1-Tr rho_A^2)(1-Tr rho_B^2)).
CriterionReport zhang_margin(const DensityMatrix& rho, double tau = kTauDetect);

// Scalar-parameter instance (mu = (alpha), nu = (beta)).
CriterionReport shi_margin(const DensityMatrix& rho, double alpha, double beta,
                           double tau = kTauDetect);

// Constant-vector instance (mu = alpha*1_l, nu = beta*1_l).
CriterionReport sun_margin(const DensityMatrix& rho, double alpha, double beta, int l,
                           double tau = kTauDetect);

// lhs = -min eigenvalue of the partial transpose, rhs = 0.
CriterionReport ppt_min_eigenvalue(const DensityMatrix& rho, double tau = kTauDetect);

struct ThresholdResult {
  double threshold = 0.0;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  int iterations = 0;
  double margin_lo = 0.0, margin_hi = 0.0;  // margins at the original endpoints
};

using CriterionFn = std::function<CriterionReport(const DensityMatrix&)>;
using ScanObserver = std::function<void(double, const CriterionReport&)>;

// Bisection on the verdict flip. Requires opposite verdicts at the endpoints
// (NoSignChange otherwise) and tol above double resolution on the bracket
// (TolTooSmall otherwise). Assumes the verdict is monotone over [lo, hi].
ThresholdResult threshold_scan(const StateFamily& family, const CriterionFn& crit, double lo,
                               double hi, double tol, const ScanObserver& observer = nullptr);

}  // namespace qsep
