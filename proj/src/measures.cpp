#include "qsep/measures.hpp"

#include <cmath>

#include "qsep/kernels.hpp"
#include "qsep/spectra.hpp"

namespace qsep {

namespace {

void check_pure(const std::vector<cplx>& psi, int d_A, int d_B) {
  if (static_cast<int>(psi.size()) != d_A * d_B)
    fail(Err::DimMismatch, "pure-state vector length does not match d_A*d_B");
  double norm2 = 0.0;
  for (const cplx& z : psi) norm2 += std::norm(z);
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-10)
    fail(Err::NotNormalized, "norm " + std::to_string(std::sqrt(norm2)));
}

BoundReport scaled_margin_bound(const std::string& name, const DensityMatrix& rho,
                                const ParamPair& p, double scale) {
  const CriterionReport rep = theorem1_margin(rho, p);
  BoundReport out;
  out.measure = name;
  out.bound = scale * rep.margin;
  out.params = p;
  out.d = std::min(rho.dims[0], rho.dims[1]);
  out.vacuous = out.bound <= 0.0;
  return out;
}

}  // namespace

double concurrence_pure(const std::vector<cplx>& psi, int d_A, int d_B) {
  check_pure(psi, d_A, d_B);
  const std::vector<double> lam = schmidt_coefficients(psi, d_A, d_B);
  double purity = 0.0;
  for (double l : lam) purity += l * l;
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

double negativity_pure(const std::vector<cplx>& psi, int d_A, int d_B) {
  check_pure(psi, d_A, d_B);
  const std::vector<double> lam = schmidt_coefficients(psi, d_A, d_B);
  const int d = std::min(d_A, d_B);
  if (d < 2) fail(Err::DimMismatch, "negativity needs both local dimensions >= 2");
  double cross = 0.0;
  for (size_t i = 0; i < lam.size(); ++i)
    for (size_t j = i + 1; j < lam.size(); ++j) cross += std::sqrt(std::max(0.0, lam[i] * lam[j]));
  return 2.0 * cross / (d - 1);
}

BoundReport concurrence_lower_bound(const DensityMatrix& rho, const ParamPair& p) {
  if (rho.parties() != 2) fail(Err::NotBipartite, "concurrence_lower_bound");
  const int d = std::min(rho.dims[0], rho.dims[1]);
  if (d < 2) fail(Err::DimMismatch, "concurrence bound needs both local dimensions >= 2");
  return scaled_margin_bound("concurrence", rho, p, std::sqrt(2.0 / (d * (d - 1.0))));
}

BoundReport cren_lower_bound(const DensityMatrix& rho, const ParamPair& p) {
  if (rho.parties() != 2) fail(Err::NotBipartite, "cren_lower_bound");
  const int d = std::min(rho.dims[0], rho.dims[1]);
  if (d < 2) fail(Err::DimMismatch, "CREN bound needs both local dimensions >= 2");
  return scaled_margin_bound("cren", rho, p, 1.0 / (d - 1.0));
}

}  // namespace qsep
