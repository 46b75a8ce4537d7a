#pragma once

#include <numeric>
#include <vector>

#include "qsep/complex_matrix.hpp"

namespace qsep {

// Validation tolerances: Hermiticity and trace are entry-level checks, the
// PSD floor is looser because fixtures carry irrational entries assembled in
// floating point.
constexpr double kTauHerm = 1e-10;
constexpr double kTauTrace = 1e-10;
constexpr double kTauPsd = 1e-9;

struct DensityMatrix {
  std::vector<int> dims;
  ComplexMatrix mat;

  int side() const { return mat.rows; }
  int parties() const { return static_cast<int>(dims.size()); }
};

// Checks squareness, dims product, Hermiticity, unit trace, and the PSD floor;
// throws the named violation with its measured residual.
DensityMatrix validate_density(const std::vector<int>& dims, const ComplexMatrix& mat);

// Density matrix on the kept subsystems (indices strictly ascending, 0-based).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Transpose applied to one tensor factor (0-based index).
ComplexMatrix partial_transpose(const DensityMatrix& rho, int sys);

// Projector |psi><psi| as a raw matrix.
ComplexMatrix pure_projector(const std::vector<cplx>& psi);

}  // namespace qsep
