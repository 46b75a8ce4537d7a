#include "qsep/density.hpp"

#include <cmath>
#include <string>

#include "qsep/kernels.hpp"
#include "qsep/spectra.hpp"

namespace qsep {

DensityMatrix validate_density(const std::vector<int>& dims, const ComplexMatrix& mat) {
  if (dims.empty()) fail(Err::DimMismatch, "empty dimension list");
  long long total = 1;
  for (int d : dims) {
    if (d <= 0) fail(Err::DimMismatch, "nonpositive subsystem dimension");
    total *= d;
  }
  if (mat.rows != mat.cols)
    fail(Err::NotSquare, std::to_string(mat.rows) + "x" + std::to_string(mat.cols));
  if (mat.rows != total)
    fail(Err::DimMismatch, "matrix side " + std::to_string(mat.rows) +
                               " does not match dims product " + std::to_string(total));

  double herm = 0.0;
  for (int r = 0; r < mat.rows; ++r)
    for (int c = 0; c <= r; ++c)
      herm = std::max(herm, std::abs(mat.at(r, c) - std::conj(mat.at(c, r))));
  if (!(herm <= kTauHerm)) fail(Err::NotHermitian, "residual " + std::to_string(herm));

  const cplx tr = trace_of(mat);
  const double tr_residual = std::abs(tr - cplx(1.0));
  if (!(tr_residual <= kTauTrace)) fail(Err::TraceNotOne, "residual " + std::to_string(tr_residual));

  const SpectrumResult eig = hermitian_eigenvalues(mat);
  const double min_eig = eig.values.back();
  if (!(min_eig >= -kTauPsd))
    fail(Err::NotPositive, "minimum eigenvalue " + std::to_string(min_eig));

  return DensityMatrix{dims, mat};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  ComplexMatrix out = partial_trace_raw(rho.mat, rho.dims, keep);
  std::vector<int> kept_dims;
  kept_dims.reserve(keep.size());
  for (int k : keep) kept_dims.push_back(rho.dims[k]);
  return DensityMatrix{kept_dims, std::move(out)};
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, int sys) {
  return partial_transpose_raw(rho.mat, rho.dims, sys);
}

ComplexMatrix pure_projector(const std::vector<cplx>& psi) {
  const int d = static_cast<int>(psi.size());
  ComplexMatrix P(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) P.at(r, c) = psi[r] * std::conj(psi[c]);
  return P;
}

}  // namespace qsep
