#pragma once

#include <optional>
#include <vector>

#include "qsep/complex_matrix.hpp"

namespace qsep {

struct SpectrumResult {
  std::vector<double> values;  // descending
  std::optional<ComplexMatrix> vectors;  // eigenvectors as columns, when requested
};

// Singular values via one-sided Jacobi column orthogonalization, descending;
// count = min(rows, cols). Convergence: relative off-diagonal 1e-12, at most
// 100 * side sweeps.
SpectrumResult singular_values(const ComplexMatrix& M);

// Sum of singular values, Tr sqrt(M^dagger M).
double trace_norm(const ComplexMatrix& M);

// Real eigenvalues of a Hermitian matrix, descending, via cyclic complex
// Jacobi rotations. Requires max |H - H^dagger| <= 1e-10.
SpectrumResult hermitian_eigenvalues(const ComplexMatrix& H, bool with_vectors = false);

// Squared singular values of the d_A x d_B reshaping of a unit vector,
// descending. psi indexed as |i_A i_B> -> i_A * d_B + i_B.
std::vector<double> schmidt_coefficients(const std::vector<cplx>& psi, int d_A, int d_B);

}  // namespace qsep
