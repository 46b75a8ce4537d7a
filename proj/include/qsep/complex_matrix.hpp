#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qsep/errors.hpp"

namespace qsep {

using cplx = std::complex<double>;

// Dense complex matrix, row-major storage.
struct ComplexMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> a;

  ComplexMatrix() = default;
  ComplexMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  cplx& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const cplx& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static ComplexMatrix zero(int r, int c) { return ComplexMatrix(r, c); }

  static ComplexMatrix identity(int d) {
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
  }

  bool same_shape(const ComplexMatrix& o) const { return rows == o.rows && cols == o.cols; }

  bool finite() const {
    for (const cplx& z : a)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }
};

inline double max_abs(const ComplexMatrix& m) {
  double mx = 0.0;
  for (const cplx& z : m.a) mx = std::max(mx, std::abs(z));
  return mx;
}

inline double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (!x.same_shape(y)) fail(Err::ShapeMismatch, "max_abs_diff on unequal shapes");
  double mx = 0.0;
  for (size_t i = 0; i < x.a.size(); ++i) mx = std::max(mx, std::abs(x.a[i] - y.a[i]));
  return mx;
}

inline double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const cplx& z : m.a) s += std::norm(z);
  return std::sqrt(s);
}

inline cplx trace_of(const ComplexMatrix& m) {
  cplx t = 0.0;
  int d = std::min(m.rows, m.cols);
  for (int i = 0; i < d; ++i) t += m.at(i, i);
  return t;
}

}  // namespace qsep
