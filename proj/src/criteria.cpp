#include "qsep/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsep/kernels.hpp"
#include "qsep/spectra.hpp"

namespace qsep {

namespace {

double sq_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

void require_bipartite(const DensityMatrix& rho, const char* who) {
  if (rho.parties() != 2) fail(Err::NotBipartite, std::string(who) + " needs exactly 2 subsystems");
}

double purity(const ComplexMatrix& m) {
  // Tr(m^2) for Hermitian m.
  double s = 0.0;
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) s += (m.at(r, c) * m.at(c, r)).real();
  return s;
}

}  // namespace

CriterionReport make_report(const std::string& name, double lhs, double rhs, double tau) {
  CriterionReport rep;
  rep.criterion = name;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.margin = lhs - rhs;
  rep.tau = tau;
  rep.verdict = rep.margin > tau ? Verdict::ENTANGLED : Verdict::INCONCLUSIVE;
  return rep;
}

double q_bound(const ParamPair& p) {
  if (p.mu.empty() || p.nu.empty()) fail(Err::ParamOutOfRange, "empty parameter vector");
  return std::sqrt((sq_norm(p.mu) + 1.0) * (sq_norm(p.nu) + 1.0));
}

ComplexMatrix build_q_matrix(const DensityMatrix& rho, const ParamPair& p) {
  require_bipartite(rho, "build_q_matrix");
  if (p.mu.empty() || p.nu.empty()) fail(Err::ParamOutOfRange, "empty parameter vector");
  const int dA = rho.dims[0], dB = rho.dims[1];
  const int n = static_cast<int>(p.mu.size()), m = static_cast<int>(p.nu.size());

  const ComplexMatrix rhoA = partial_trace_raw(rho.mat, rho.dims, {0});
  const ComplexMatrix rhoB = partial_trace_raw(rho.mat, rho.dims, {1});
  const ComplexMatrix R = realign(rho.mat, dA, dB);
  const std::vector<cplx> vecA = vectorize(rhoA);
  const std::vector<cplx> vecB = vectorize(rhoB);
  const cplx tr = trace_of(rho.mat);

  ComplexMatrix Q(n + dA * dA, m + dB * dB);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) Q.at(i, j) = p.mu[i] * p.nu[j] * tr;
    for (int j = 0; j < dB * dB; ++j) Q.at(i, m + j) = p.mu[i] * vecB[j];
  }
  for (int i = 0; i < dA * dA; ++i) {
    for (int j = 0; j < m; ++j) Q.at(n + i, j) = vecA[i] * p.nu[j];
    for (int j = 0; j < dB * dB; ++j) Q.at(n + i, m + j) = R.at(i, j);
  }
  return Q;
}

CriterionReport theorem1_margin(const DensityMatrix& rho, const ParamPair& p, double tau) {
  const double lhs = trace_norm(build_q_matrix(rho, p));
  return make_report("thm1", lhs, q_bound(p), tau);
}

CriterionReport ccnr_margin(const DensityMatrix& rho, double tau) {
  require_bipartite(rho, "ccnr_margin");
  const double lhs = trace_norm(realign(rho.mat, rho.dims[0], rho.dims[1]));
  return make_report("ccnr", lhs, 1.0, tau);
}

CriterionReport zhang_margin(const DensityMatrix& rho, double tau) {
  require_bipartite(rho, "zhang_margin");
  const ComplexMatrix rhoA = partial_trace_raw(rho.mat, rho.dims, {0});
  const ComplexMatrix rhoB = partial_trace_raw(rho.mat, rho.dims, {1});
  const ComplexMatrix diff = sub(rho.mat, kron(rhoA, rhoB));
  const double lhs = trace_norm(realign(diff, rho.dims[0], rho.dims[1]));
  const double rhs = std::sqrt(std::max(0.0, 1.0 - purity(rhoA)) *
                               std::max(0.0, 1.0 - purity(rhoB)));
  CriterionReport rep = make_report("zhang", lhs, rhs, tau);
  return rep;
}

CriterionReport shi_margin(const DensityMatrix& rho, double alpha, double beta, double tau) {
  CriterionReport rep = theorem1_margin(rho, ParamPair{{alpha}, {beta}}, tau);
  rep.criterion = "shi";
  return rep;
}

CriterionReport sun_margin(const DensityMatrix& rho, double alpha, double beta, int l,
                           double tau) {
  if (l < 1) fail(Err::ParamOutOfRange, "sun_margin: l must be >= 1");
  CriterionReport rep = theorem1_margin(
      rho, ParamPair{std::vector<double>(l, alpha), std::vector<double>(l, beta)}, tau);
  rep.criterion = "sun";
  return rep;
}

CriterionReport ppt_min_eigenvalue(const DensityMatrix& rho, double tau) {
  require_bipartite(rho, "ppt_min_eigenvalue");
  const ComplexMatrix pt = partial_transpose(rho, 1);
  const SpectrumResult eig = hermitian_eigenvalues(pt);
  return make_report("ppt", -eig.values.back(), 0.0, tau);
}

ThresholdResult threshold_scan(const StateFamily& family, const CriterionFn& crit, double lo,
                               double hi, double tol, const ScanObserver& observer) {
  if (!(lo < hi)) fail(Err::ParamOutOfRange, "threshold_scan: lo must be below hi");
  if (!(tol > 0.0)) fail(Err::TolTooSmall, "threshold_scan: tol must be positive");
  const double resolution =
      4.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(lo), std::abs(hi)});
  if (tol < resolution)
    fail(Err::TolTooSmall, "threshold_scan: tol " + std::to_string(tol) +
                               " below double resolution " + std::to_string(resolution));

  auto evaluate = [&](double t) {
    const CriterionReport rep = crit(family.generator(t));
    if (observer) observer(t, rep);
    return rep;
  };

  const CriterionReport rep_lo = evaluate(lo);
  const CriterionReport rep_hi = evaluate(hi);
  if (rep_lo.verdict == rep_hi.verdict)
    fail(Err::NoSignChange, "threshold_scan: same verdict (" +
                                std::string(verdict_name(rep_lo.verdict)) +
                                ") at both endpoints of [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");

  ThresholdResult res;
  res.margin_lo = rep_lo.margin;
  res.margin_hi = rep_hi.margin;
  double a = lo, b = hi;
  const Verdict hi_verdict = rep_hi.verdict;
  int iters = 0;
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    const CriterionReport rep_mid = evaluate(mid);
    if (rep_mid.verdict == hi_verdict)
      b = mid;
    else
      a = mid;
    ++iters;
  }
  res.threshold = 0.5 * (a + b);
  res.bracket_lo = a;
  res.bracket_hi = b;
  res.iterations = iters;
  return res;
}

}  // namespace qsep
