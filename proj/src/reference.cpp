#include "qsep/kernels.hpp"

// Serial reference kernels. These stay deliberately plain-loop so the
// parallel versions can be checked against them entry-for-entry.

namespace qsep {
namespace ref {

ComplexMatrix matmul(const ComplexMatrix& A, const ComplexMatrix& B) {
  detail::check_matmul(A, B);
  ComplexMatrix C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const cplx aik = A.at(i, k);
      if (aik == cplx(0.0)) continue;
      for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
    }
  return C;
}

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B) {
  ComplexMatrix C(A.rows * B.rows, A.cols * B.cols);
  for (int ia = 0; ia < A.rows; ++ia)
    for (int ja = 0; ja < A.cols; ++ja) {
      const cplx aij = A.at(ia, ja);
      for (int ib = 0; ib < B.rows; ++ib)
        for (int jb = 0; jb < B.cols; ++jb)
          C.at(ia * B.rows + ib, ja * B.cols + jb) = aij * B.at(ib, jb);
    }
  return C;
}

ComplexMatrix realign(const ComplexMatrix& Z, int m, int n) {
  detail::check_realign(Z, m, n);
  ComplexMatrix R(m * m, n * n);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) R.at(j * m + i, c * n + r) = Z.at(i * n + r, j * n + c);
  return R;
}

ComplexMatrix partial_trace_raw(const ComplexMatrix& M, const std::vector<int>& dims,
                                const std::vector<int>& keep) {
  detail::check_subsystems(M, dims);
  detail::check_keep(dims, keep);
  const detail::TracePlan plan = detail::make_trace_plan(dims, keep);
  const int D = static_cast<int>(plan.kept_total);
  ComplexMatrix out(D, D);
  for (int r = 0; r < D; ++r)
    for (int c = 0; c < D; ++c) {
      cplx s = 0.0;
      for (long long t = 0; t < plan.traced_total; ++t)
        s += M.at(static_cast<int>(plan.kept_off[r] + plan.traced_off[t]),
                  static_cast<int>(plan.kept_off[c] + plan.traced_off[t]));
      out.at(r, c) = s;
    }
  return out;
}

ComplexMatrix partial_transpose_raw(const ComplexMatrix& M, const std::vector<int>& dims,
                                    int sys) {
  detail::check_subsystems(M, dims);
  detail::check_sys(dims, sys);
  const int n = static_cast<int>(dims.size());
  std::vector<long long> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];
  const long long s = stride[sys];
  const int d = dims[sys];
  ComplexMatrix out(M.rows, M.cols);
  for (int r = 0; r < M.rows; ++r) {
    const int ar = static_cast<int>((r / s) % d);
    for (int c = 0; c < M.cols; ++c) {
      const int ac = static_cast<int>((c / s) % d);
      out.at(r, c) = M.at(static_cast<int>(r + (ac - ar) * s), static_cast<int>(c + (ar - ac) * s));
    }
  }
  return out;
}

ComplexMatrix permute_raw(const ComplexMatrix& M, const std::vector<int>& dims,
                          const std::vector<int>& perm) {
  detail::check_subsystems(M, dims);
  detail::check_perm(dims, perm);
  const int n = static_cast<int>(dims.size());
  std::vector<long long> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];
  std::vector<int> new_dims(n);
  for (int p = 0; p < n; ++p) new_dims[p] = dims[perm[p]];
  std::vector<long long> old_index(M.rows);
  for (long long x = 0; x < M.rows; ++x) {
    long long rem = x, o = 0;
    for (int p = n - 1; p >= 0; --p) {
      o += (rem % new_dims[p]) * stride[perm[p]];
      rem /= new_dims[p];
    }
    old_index[x] = o;
  }
  ComplexMatrix out(M.rows, M.cols);
  for (int r = 0; r < M.rows; ++r)
    for (int c = 0; c < M.cols; ++c)
      out.at(r, c) = M.at(static_cast<int>(old_index[r]), static_cast<int>(old_index[c]));
  return out;
}

}  // namespace ref
}  // namespace qsep
