#pragma once

#include <vector>

#include "qsep/complex_matrix.hpp"

namespace qsep {

// Data-parallel kernels. Each output entry is computed by exactly one thread
// and inner reductions run in a fixed index order, so results are bitwise
// identical to the serial twins in qsep::ref for every thread count.
ComplexMatrix matmul(const ComplexMatrix& A, const ComplexMatrix& B);
ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B);

// Block realignment: Z is an m-by-m grid of n-by-n blocks; output row j*m+i is
// the column-stacked block (i,j) laid out as a row. This block-row order is
// what makes realign(kron(A,B)) == vectorize(A) * vectorize(B)^T.
ComplexMatrix realign(const ComplexMatrix& Z, int m, int n);

// Subsystem index conventions: dims = [d_0..d_{n-1}], composite index is
// row-major (subsystem 0 slowest), matching kron nesting order.
ComplexMatrix partial_trace_raw(const ComplexMatrix& M, const std::vector<int>& dims,
                                const std::vector<int>& keep);
ComplexMatrix partial_transpose_raw(const ComplexMatrix& M, const std::vector<int>& dims,
                                    int sys);
// perm[p] = original subsystem placed at position p of the output.
ComplexMatrix permute_raw(const ComplexMatrix& M, const std::vector<int>& dims,
                          const std::vector<int>& perm);

// Column-stacking: entry (r,c) lands at index c*rows + r.
std::vector<cplx> vectorize(const ComplexMatrix& A);

ComplexMatrix transpose(const ComplexMatrix& A);
ComplexMatrix adjoint(const ComplexMatrix& A);
ComplexMatrix add(const ComplexMatrix& A, const ComplexMatrix& B);
ComplexMatrix sub(const ComplexMatrix& A, const ComplexMatrix& B);
ComplexMatrix scale(cplx k, const ComplexMatrix& A);

// Serial reference implementations kept for testing and benchmarking.
namespace ref {
ComplexMatrix matmul(const ComplexMatrix& A, const ComplexMatrix& B);
ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B);
ComplexMatrix realign(const ComplexMatrix& Z, int m, int n);
ComplexMatrix partial_trace_raw(const ComplexMatrix& M, const std::vector<int>& dims,
                                const std::vector<int>& keep);
ComplexMatrix partial_transpose_raw(const ComplexMatrix& M, const std::vector<int>& dims,
                                    int sys);
ComplexMatrix permute_raw(const ComplexMatrix& M, const std::vector<int>& dims,
                          const std::vector<int>& perm);
}  // namespace ref

// Shared argument checks (throw qsep::Error).
namespace detail {
void check_matmul(const ComplexMatrix& A, const ComplexMatrix& B);
void check_realign(const ComplexMatrix& Z, int m, int n);
void check_subsystems(const ComplexMatrix& M, const std::vector<int>& dims);
void check_keep(const std::vector<int>& dims, const std::vector<int>& keep);
void check_sys(const std::vector<int>& dims, int sys);
void check_perm(const std::vector<int>& dims, const std::vector<int>& perm);

// Offset tables for partial_trace_raw: linear offsets of the kept block and
// the traced block so that full index = kept_off[k] + traced_off[t].
struct TracePlan {
  std::vector<long long> kept_off, traced_off;
  std::vector<int> kept_dims;
  long long kept_total = 1, traced_total = 1;
};
TracePlan make_trace_plan(const std::vector<int>& dims, const std::vector<int>& keep);
}  // namespace detail

}  // namespace qsep
