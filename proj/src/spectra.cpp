#include "qsep/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qsep/kernels.hpp"

namespace qsep {

namespace {

constexpr double kJacobiTol = 1e-12;

// 2x2 rotation closing the (p,q) off-diagonal of the Hermitian Gram block
// [[gpp, gpq], [conj(gpq), gqq]]. The unitary is
//   V = [[c, s], [-s*e^{-i phi}, c*e^{-i phi}]],  phi = arg(gpq),
// chosen so V^dagger G V is diagonal.
struct Rotation {
  double c, s;
  cplx eimphi;  // e^{-i phi}
};

Rotation make_rotation(double gpp, double gqq, cplx gpq) {
  const double r = std::abs(gpq);
  Rotation rot;
  rot.eimphi = std::conj(gpq) / r;
  const double tau = (gqq - gpp) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  rot.c = 1.0 / std::sqrt(1.0 + t * t);
  rot.s = t * rot.c;
  return rot;
}

}  // namespace

SpectrumResult singular_values(const ComplexMatrix& M) {
  if (M.rows == 0 || M.cols == 0) return {{}, std::nullopt};
  // One-sided Jacobi wants at least as many rows as columns.
  ComplexMatrix A = (M.rows >= M.cols) ? M : transpose(M);
  const int rows = A.rows, cols = A.cols;
  const int max_sweeps = 100 * std::max(rows, cols);

  // Column-major work buffer for contiguous column access.
  std::vector<cplx> col(static_cast<size_t>(rows) * cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) col[static_cast<size_t>(c) * rows + r] = A.at(r, c);

  // Numerically null columns are frozen: on rank-deficient input the
  // null-space column norms decay geometrically with every sweep, so the
  // relative pair criterion below would hover near 1 forever. A column whose
  // norm has fallen to rounding level relative to the whole matrix holds no
  // information worth orthogonalizing.
  double fro2 = 0.0;
  for (const cplx& z : col) fro2 += std::norm(z);
  const double null2 = 1e-26 * fro2;  // (1e-13 * |A|_F)^2

  double off = 0.0;
  bool converged = (cols == 1);
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    off = 0.0;
    for (int p = 0; p < cols - 1; ++p) {
      for (int q = p + 1; q < cols; ++q) {
        cplx* cp = &col[static_cast<size_t>(p) * rows];
        cplx* cq = &col[static_cast<size_t>(q) * rows];
        double gpp = 0.0, gqq = 0.0;
        cplx gpq = 0.0;
        for (int r = 0; r < rows; ++r) {
          gpp += std::norm(cp[r]);
          gqq += std::norm(cq[r]);
          gpq += std::conj(cp[r]) * cq[r];
        }
        if (gpp <= null2 || gqq <= null2) continue;
        const double denom = std::sqrt(gpp * gqq);
        if (std::abs(gpq) <= kJacobiTol * denom) continue;
        off = std::max(off, std::abs(gpq) / denom);
        const Rotation rot = make_rotation(gpp, gqq, gpq);
        for (int r = 0; r < rows; ++r) {
          const cplx vp = cp[r], vq = cq[r];
          cp[r] = rot.c * vp - rot.s * rot.eimphi * vq;
          cq[r] = rot.s * vp + rot.c * rot.eimphi * vq;
        }
      }
    }
    converged = (off <= kJacobiTol);
  }
  if (!converged)
    fail(Err::ConvergenceFailure, "one-sided Jacobi: max sweeps " + std::to_string(max_sweeps) +
                                      " reached, residual " + std::to_string(off));

  SpectrumResult res;
  res.values.resize(cols);
  for (int c = 0; c < cols; ++c) {
    double s = 0.0;
    for (int r = 0; r < rows; ++r) s += std::norm(col[static_cast<size_t>(c) * rows + r]);
    res.values[c] = std::sqrt(s);
  }
  std::sort(res.values.begin(), res.values.end(), std::greater<double>());
  return res;
}

double trace_norm(const ComplexMatrix& M) {
  const SpectrumResult s = singular_values(M);
  // Fixed ascending summation order keeps the result deterministic.
  double sum = 0.0;
  for (auto it = s.values.rbegin(); it != s.values.rend(); ++it) sum += *it;
  return sum;
}

SpectrumResult hermitian_eigenvalues(const ComplexMatrix& H, bool with_vectors) {
  if (H.rows != H.cols) fail(Err::NotSquare, "hermitian_eigenvalues on non-square matrix");
  const int n = H.rows;
  double herm_residual = 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c <= r; ++c)
      herm_residual = std::max(herm_residual, std::abs(H.at(r, c) - std::conj(H.at(c, r))));
  if (herm_residual > 1e-10)
    fail(Err::NotHermitian,
         "hermitian_eigenvalues: residual " + std::to_string(herm_residual));

  // Work on the symmetrized copy.
  ComplexMatrix W(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) W.at(r, c) = 0.5 * (H.at(r, c) + std::conj(H.at(c, r)));

  ComplexMatrix U = with_vectors ? ComplexMatrix::identity(n) : ComplexMatrix();

  const double fro = frobenius_norm(W);
  SpectrumResult res;
  if (fro == 0.0 || n == 1) {
    res.values.resize(n);
    for (int i = 0; i < n; ++i) res.values[i] = W.at(i, i).real();
    std::sort(res.values.begin(), res.values.end(), std::greater<double>());
    if (with_vectors) res.vectors = ComplexMatrix::identity(n);
    return res;
  }

  const double thr = kJacobiTol * fro;
  const int max_sweeps = 100 * n;
  bool converged = false;
  double off = 0.0;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    off = 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx hpq = W.at(p, q);
        if (std::abs(hpq) <= thr) continue;
        off = std::max(off, std::abs(hpq));
        const Rotation rot = make_rotation(W.at(p, p).real(), W.at(q, q).real(), hpq);
        const cplx vpp = rot.c, vpq = rot.s;
        const cplx vqp = -rot.s * rot.eimphi, vqq = rot.c * rot.eimphi;
        // W <- V^dagger W V : columns first, then rows.
        for (int r = 0; r < n; ++r) {
          const cplx wp = W.at(r, p), wq = W.at(r, q);
          W.at(r, p) = wp * vpp + wq * vqp;
          W.at(r, q) = wp * vpq + wq * vqq;
        }
        for (int c = 0; c < n; ++c) {
          const cplx wp = W.at(p, c), wq = W.at(q, c);
          W.at(p, c) = std::conj(vpp) * wp + std::conj(vqp) * wq;
          W.at(q, c) = std::conj(vpq) * wp + std::conj(vqq) * wq;
        }
        // Hygiene: the (p,q) pair is exactly zero in exact arithmetic.
        W.at(p, q) = 0.0;
        W.at(q, p) = 0.0;
        W.at(p, p) = W.at(p, p).real();
        W.at(q, q) = W.at(q, q).real();
        if (with_vectors) {
          for (int r = 0; r < n; ++r) {
            const cplx up = U.at(r, p), uq = U.at(r, q);
            U.at(r, p) = up * vpp + uq * vqp;
            U.at(r, q) = up * vpq + uq * vqq;
          }
        }
      }
    }
    converged = (off <= thr);
  }
  if (!converged)
    fail(Err::ConvergenceFailure, "Hermitian Jacobi: max sweeps " + std::to_string(max_sweeps) +
                                      " reached, residual " + std::to_string(off));

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = W.at(i, i).real();
  std::sort(order.begin(), order.end(), [&](int a, int b) { return diag[a] > diag[b]; });

  res.values.resize(n);
  for (int i = 0; i < n; ++i) res.values[i] = diag[order[i]];
  if (with_vectors) {
    ComplexMatrix V(n, n);
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r) V.at(r, c) = U.at(r, order[c]);
    res.vectors = std::move(V);
  }
  return res;
}

std::vector<double> schmidt_coefficients(const std::vector<cplx>& psi, int d_A, int d_B) {
  if (static_cast<int>(psi.size()) != d_A * d_B)
    fail(Err::DimMismatch, "schmidt_coefficients: vector length does not match d_A*d_B");
  double norm2 = 0.0;
  for (const cplx& z : psi) norm2 += std::norm(z);
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-10)
    fail(Err::NotNormalized, "schmidt_coefficients: norm " + std::to_string(std::sqrt(norm2)));
  ComplexMatrix M(d_A, d_B);
  for (int i = 0; i < d_A; ++i)
    for (int j = 0; j < d_B; ++j) M.at(i, j) = psi[static_cast<size_t>(i) * d_B + j];
  const SpectrumResult s = singular_values(M);
  std::vector<double> lam(s.values.size());
  for (size_t i = 0; i < lam.size(); ++i) lam[i] = s.values[i] * s.values[i];
  return lam;
}

}  // namespace qsep
