#include "qsep/kernels.hpp"

#include <algorithm>
#include <numeric>

namespace qsep {

namespace detail {

void check_matmul(const ComplexMatrix& A, const ComplexMatrix& B) {
  if (A.cols != B.rows)
    fail(Err::ShapeMismatch, "matmul: " + std::to_string(A.rows) + "x" + std::to_string(A.cols) +
                                 " times " + std::to_string(B.rows) + "x" + std::to_string(B.cols));
}

void check_realign(const ComplexMatrix& Z, int m, int n) {
  if (m <= 0 || n <= 0) fail(Err::ShapeMismatch, "realign: nonpositive block shape");
  if (Z.rows != m * n || Z.cols != m * n)
    fail(Err::ShapeMismatch, "realign: matrix side " + std::to_string(Z.rows) +
                                 " does not equal m*n = " + std::to_string(m * n));
}

void check_subsystems(const ComplexMatrix& M, const std::vector<int>& dims) {
  long long total = 1;
  for (int d : dims) {
    if (d <= 0) fail(Err::DimMismatch, "nonpositive subsystem dimension");
    total *= d;
  }
  if (M.rows != M.cols) fail(Err::NotSquare, "subsystem op on non-square matrix");
  if (M.rows != total)
    fail(Err::DimMismatch, "matrix side " + std::to_string(M.rows) +
                               " does not match dims product " + std::to_string(total));
}

void check_keep(const std::vector<int>& dims, const std::vector<int>& keep) {
  if (keep.empty()) fail(Err::BadSubsystemIndex, "partial_trace: empty keep set");
  int prev = -1;
  for (int k : keep) {
    if (k < 0 || k >= static_cast<int>(dims.size()))
      fail(Err::BadSubsystemIndex, "partial_trace: index " + std::to_string(k) + " out of range");
    if (k <= prev) fail(Err::BadSubsystemIndex, "partial_trace: keep set must be strictly ascending");
    prev = k;
  }
}

void check_sys(const std::vector<int>& dims, int sys) {
  if (sys < 0 || sys >= static_cast<int>(dims.size()))
    fail(Err::BadSubsystemIndex, "partial_transpose: index " + std::to_string(sys) + " out of range");
}

void check_perm(const std::vector<int>& dims, const std::vector<int>& perm) {
  if (perm.size() != dims.size()) fail(Err::BadPermutation, "permutation length mismatch");
  std::vector<bool> seen(dims.size(), false);
  for (int p : perm) {
    if (p < 0 || p >= static_cast<int>(dims.size()) || seen[p])
      fail(Err::BadPermutation, "not a permutation of subsystem indices");
    seen[p] = true;
  }
}

TracePlan make_trace_plan(const std::vector<int>& dims, const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  std::vector<long long> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

  std::vector<bool> kept(n, false);
  for (int k : keep) kept[k] = true;

  TracePlan plan;
  std::vector<int> traced_dims;
  std::vector<long long> kept_strides, traced_strides;
  for (int k = 0; k < n; ++k) {
    if (kept[k]) {
      plan.kept_dims.push_back(dims[k]);
      kept_strides.push_back(stride[k]);
      plan.kept_total *= dims[k];
    } else {
      traced_dims.push_back(dims[k]);
      traced_strides.push_back(stride[k]);
      plan.traced_total *= dims[k];
    }
  }

  auto offsets = [](const std::vector<int>& ds, const std::vector<long long>& ss, long long total) {
    std::vector<long long> off(total, 0);
    for (long long x = 0; x < total; ++x) {
      long long rem = x, o = 0;
      for (int k = static_cast<int>(ds.size()) - 1; k >= 0; --k) {
        o += (rem % ds[k]) * ss[k];
        rem /= ds[k];
      }
      off[x] = o;
    }
    return off;
  };
  plan.kept_off = offsets(plan.kept_dims, kept_strides, plan.kept_total);
  plan.traced_off = offsets(traced_dims, traced_strides, plan.traced_total);
  return plan;
}

}  // namespace detail

std::vector<cplx> vectorize(const ComplexMatrix& A) {
  std::vector<cplx> v(static_cast<size_t>(A.rows) * A.cols);
  for (int c = 0; c < A.cols; ++c)
    for (int r = 0; r < A.rows; ++r) v[static_cast<size_t>(c) * A.rows + r] = A.at(r, c);
  return v;
}

ComplexMatrix transpose(const ComplexMatrix& A) {
  ComplexMatrix T(A.cols, A.rows);
  for (int r = 0; r < A.rows; ++r)
    for (int c = 0; c < A.cols; ++c) T.at(c, r) = A.at(r, c);
  return T;
}

ComplexMatrix adjoint(const ComplexMatrix& A) {
  ComplexMatrix T(A.cols, A.rows);
  for (int r = 0; r < A.rows; ++r)
    for (int c = 0; c < A.cols; ++c) T.at(c, r) = std::conj(A.at(r, c));
  return T;
}

ComplexMatrix add(const ComplexMatrix& A, const ComplexMatrix& B) {
  if (!A.same_shape(B)) fail(Err::ShapeMismatch, "add on unequal shapes");
  ComplexMatrix C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
  return C;
}

ComplexMatrix sub(const ComplexMatrix& A, const ComplexMatrix& B) {
  if (!A.same_shape(B)) fail(Err::ShapeMismatch, "sub on unequal shapes");
  ComplexMatrix C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] -= B.a[i];
  return C;
}

ComplexMatrix scale(cplx k, const ComplexMatrix& A) {
  ComplexMatrix C = A;
  for (cplx& z : C.a) z *= k;
  return C;
}

ComplexMatrix matmul(const ComplexMatrix& A, const ComplexMatrix& B) {
  detail::check_matmul(A, B);
  ComplexMatrix C(A.rows, B.cols);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < A.rows; ++i) {
    for (int k = 0; k < A.cols; ++k) {
      const cplx aik = A.at(i, k);
      if (aik == cplx(0.0)) continue;
      const cplx* brow = &B.a[static_cast<size_t>(k) * B.cols];
      cplx* crow = &C.a[static_cast<size_t>(i) * C.cols];
      for (int j = 0; j < B.cols; ++j) crow[j] += aik * brow[j];
    }
  }
  return C;
}

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B) {
  ComplexMatrix C(A.rows * B.rows, A.cols * B.cols);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < C.rows; ++r) {
    const int ia = r / B.rows, ib = r % B.rows;
    for (int ja = 0; ja < A.cols; ++ja) {
      const cplx aij = A.at(ia, ja);
      for (int jb = 0; jb < B.cols; ++jb) C.at(r, ja * B.cols + jb) = aij * B.at(ib, jb);
    }
  }
  return C;
}

ComplexMatrix realign(const ComplexMatrix& Z, int m, int n) {
  detail::check_realign(Z, m, n);
  ComplexMatrix R(m * m, n * n);
#pragma omp parallel for schedule(static)
  for (int row = 0; row < m * m; ++row) {
    const int i = row % m, j = row / m;
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r) R.at(row, c * n + r) = Z.at(i * n + r, j * n + c);
  }
  return R;
}

ComplexMatrix partial_trace_raw(const ComplexMatrix& M, const std::vector<int>& dims,
                                const std::vector<int>& keep) {
  detail::check_subsystems(M, dims);
  detail::check_keep(dims, keep);
  const detail::TracePlan plan = detail::make_trace_plan(dims, keep);
  const int D = static_cast<int>(plan.kept_total);
  ComplexMatrix out(D, D);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < D; ++r) {
    for (int c = 0; c < D; ++c) {
      cplx s = 0.0;
      for (long long t = 0; t < plan.traced_total; ++t)
        s += M.at(static_cast<int>(plan.kept_off[r] + plan.traced_off[t]),
                  static_cast<int>(plan.kept_off[c] + plan.traced_off[t]));
      out.at(r, c) = s;
    }
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
#pragma omp parallel for schedule(static)
  for (int r = 0; r < M.rows; ++r) {
    const int ar = static_cast<int>((r / s) % d);
    for (int c = 0; c < M.cols; ++c) {
      const int ac = static_cast<int>((c / s) % d);
      const int r2 = static_cast<int>(r + (ac - ar) * s);
      const int c2 = static_cast<int>(c + (ar - ac) * s);
      out.at(r, c) = M.at(r2, c2);
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
  // old_index[x] = composite original index of output index x
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
#pragma omp parallel for schedule(static)
  for (int r = 0; r < M.rows; ++r)
    for (int c = 0; c < M.cols; ++c)
      out.at(r, c) = M.at(static_cast<int>(old_index[r]), static_cast<int>(old_index[c]));
  return out;
}

}  // namespace qsep
