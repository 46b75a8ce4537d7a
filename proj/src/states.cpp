#include "qsep/states.hpp"

#include <cmath>
#include <numeric>

#include "qsep/kernels.hpp"

namespace qsep {

namespace {

long long dims_product(const std::vector<int>& dims) {
  long long total = 1;
  for (int d : dims) total *= d;
  return total;
}

void need_params(const std::string& name, const std::vector<double>& params, size_t lo,
                 size_t hi) {
  if (params.size() < lo || params.size() > hi)
    fail(Err::ParamOutOfRange, name + ": expected " + std::to_string(lo) +
                                   (hi > lo ? ".." + std::to_string(hi) : "") +
                                   " parameter(s), got " + std::to_string(params.size()));
}

void need_range(const std::string& name, double v, double lo, double hi, bool open) {
  const bool bad = open ? !(v > lo && v < hi) : !(v >= lo && v <= hi);
  if (bad)
    fail(Err::ParamOutOfRange, name + ": parameter " + std::to_string(v) + " outside " +
                                   (open ? "(" : "[") + std::to_string(lo) + ", " +
                                   std::to_string(hi) + (open ? ")" : "]"));
}

ComplexMatrix bell_projector(int d) {
  std::vector<cplx> psi(static_cast<size_t>(d) * d, 0.0);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) psi[static_cast<size_t>(i) * d + i] = amp;
  return pure_projector(psi);
}

// 2 x 4 bound entangled fixture. The source prints this matrix with one row
// dropped by typesetting; the row restored here is the unique Hermitian
// completion of the printed columns, and it reproduces the published
// detection thresholds.
ComplexMatrix horodecki_2x4_mat(double d) {
  const double s = std::sqrt(1.0 - d * d) / 2.0;
  const double h = (1.0 + d) / 2.0;
  const double z = 0.0;
  const double rows[8][8] = {
      {d, z, z, z, z, d, z, z},
      {z, d, z, z, z, z, d, z},
      {z, z, d, z, z, z, z, d},
      {z, z, z, d, z, z, z, z},
      {z, z, z, z, h, z, z, s},
      {d, z, z, z, z, d, z, z},
      {z, d, z, z, z, z, d, z},
      {z, z, d, z, s, z, z, h},
  };
  ComplexMatrix M(8, 8);
  const double norm = 1.0 / (1.0 + 7.0 * d);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) M.at(r, c) = rows[r][c] * norm;
  return M;
}

ComplexMatrix horodecki_3x3_mat(double t) {
  const double s = std::sqrt(1.0 - t * t) / 2.0;
  const double h = (1.0 + t) / 2.0;
  const double z = 0.0;
  const double rows[9][9] = {
      {t, z, z, z, t, z, z, z, t},
      {z, t, z, z, z, z, z, z, z},
      {z, z, t, z, z, z, z, z, z},
      {z, z, z, t, z, z, z, z, z},
      {t, z, z, z, t, z, z, z, t},
      {z, z, z, z, z, t, z, z, z},
      {z, z, z, z, z, z, h, z, s},
      {z, z, z, z, z, z, z, t, z},
      {t, z, z, z, t, z, s, z, h},
  };
  ComplexMatrix M(9, 9);
  const double norm = 1.0 / (1.0 + 8.0 * t);
  for (int r = 0; r < 9; ++r)
    for (int c = 0; c < 9; ++c) M.at(r, c) = rows[r][c] * norm;
  return M;
}

ComplexMatrix example1_mat(double x, double d) {
  // |xi> = (|00> + |11>)/sqrt(2) on the first two B-levels of the 2 x 4 space.
  std::vector<cplx> xi(8, 0.0);
  xi[0] = 1.0 / std::sqrt(2.0);
  xi[5] = 1.0 / std::sqrt(2.0);
  return add(scale(x, pure_projector(xi)), scale(1.0 - x, horodecki_2x4_mat(d)));
}

ComplexMatrix maximally_mixed(int d, double weight) {
  ComplexMatrix M(d, d);
  for (int i = 0; i < d; ++i) M.at(i, i) = weight / d;
  return M;
}

ComplexMatrix tiles_mat() {
  // Five unextendible product-basis vectors on 3 x 3.
  auto basis_combo = [](int a0, int a1, int a2, int b0, int b1, int b2, double norm) {
    std::vector<cplx> v(9, 0.0);
    const double av[3] = {double(a0), double(a1), double(a2)};
    const double bv[3] = {double(b0), double(b1), double(b2)};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) v[static_cast<size_t>(i) * 3 + j] = av[i] * bv[j] * norm;
    return v;
  };
  const double r2 = 1.0 / std::sqrt(2.0);
  const std::vector<std::vector<cplx>> upb = {
      basis_combo(1, 0, 0, 1, -1, 0, r2),   // |0>(|0>-|1>)/sqrt(2)
      basis_combo(1, -1, 0, 0, 0, 1, r2),   // (|0>-|1>)|2>/sqrt(2)
      basis_combo(0, 0, 1, 0, 1, -1, r2),   // |2>(|1>-|2>)/sqrt(2)
      basis_combo(0, 1, -1, 1, 0, 0, r2),   // (|1>-|2>)|0>/sqrt(2)
      basis_combo(1, 1, 1, 1, 1, 1, 1.0 / 3.0),
  };
  ComplexMatrix M = ComplexMatrix::identity(9);
  for (const auto& v : upb) M = sub(M, pure_projector(v));
  return scale(0.25, M);
}

ComplexMatrix w_noise_mat(double q) {
  std::vector<cplx> w(27, 0.0);
  const double amp = 1.0 / std::sqrt(6.0);
  auto ket = [](int a, int b, int c) { return (a * 3 + b) * 3 + c; };
  w[ket(0, 0, 1)] = amp;
  w[ket(0, 1, 0)] = amp;
  w[ket(1, 0, 0)] = amp;
  w[ket(1, 1, 2)] = amp;
  w[ket(1, 2, 1)] = amp;
  w[ket(2, 1, 1)] = amp;
  return add(maximally_mixed(27, 1.0 - q), scale(q, pure_projector(w)));
}

ComplexMatrix ghz_noise_mat(double x) {
  std::vector<cplx> g(8, 0.0);
  g[0] = 1.0 / std::sqrt(2.0);
  g[7] = 1.0 / std::sqrt(2.0);
  return add(maximally_mixed(8, x), scale(1.0 - x, pure_projector(g)));
}

}  // namespace

DensityMatrix builtin_state(const std::string& name, const std::vector<double>& params) {
  if (name == "bell") {
    need_params(name, params, 1, 1);
    const int d = static_cast<int>(params[0]);
    if (d < 2 || d != params[0]) fail(Err::ParamOutOfRange, "bell: dimension must be an integer >= 2");
    return validate_density({d, d}, bell_projector(d));
  }
  if (name == "horodecki_2x4") {
    need_params(name, params, 1, 1);
    need_range(name, params[0], 0.0, 1.0, true);
    return validate_density({2, 4}, horodecki_2x4_mat(params[0]));
  }
  if (name == "example1") {
    need_params(name, params, 1, 2);
    const double x = params[0];
    const double d = params.size() > 1 ? params[1] : 0.9;
    need_range(name, x, 0.0, 1.0, false);
    need_range(name, d, 0.0, 1.0, true);
    return validate_density({2, 4}, example1_mat(x, d));
  }
  if (name == "horodecki_3x3") {
    need_params(name, params, 1, 1);
    need_range(name, params[0], 0.0, 1.0, true);
    return validate_density({3, 3}, horodecki_3x3_mat(params[0]));
  }
  if (name == "example2") {
    need_params(name, params, 2, 2);
    const double p = params[0], t = params[1];
    need_range(name, p, 0.0, 1.0, false);
    need_range(name, t, 0.0, 1.0, true);
    return validate_density(
        {3, 3}, add(maximally_mixed(9, 1.0 - p), scale(p, horodecki_3x3_mat(t))));
  }
  if (name == "tiles") {
    need_params(name, params, 0, 0);
    return validate_density({3, 3}, tiles_mat());
  }
  if (name == "tiles_noise") {
    need_params(name, params, 1, 1);
    need_range(name, params[0], 0.0, 1.0, false);
    return validate_density(
        {3, 3}, add(maximally_mixed(9, 1.0 - params[0]), scale(params[0], tiles_mat())));
  }
  if (name == "w_noise") {
    need_params(name, params, 1, 1);
    need_range(name, params[0], 0.0, 1.0, false);
    return validate_density({3, 3, 3}, w_noise_mat(params[0]));
  }
  if (name == "ghz_noise") {
    need_params(name, params, 1, 1);
    need_range(name, params[0], 0.0, 1.0, false);
    return validate_density({2, 2, 2}, ghz_noise_mat(params[0]));
  }
  fail(Err::UnknownState, name);
}

StateFamily builtin_family(const std::string& name, const std::vector<double>& params) {
  if (name == "example1") {
    const double d = params.empty() ? 0.9 : params[0];
    if (params.size() > 1) fail(Err::ParamOutOfRange, "example1 family takes at most one parameter");
    need_range(name, d, 0.0, 1.0, true);
    return {name, {2, 4}, 0.0, 1.0,
            [d](double x) { return builtin_state("example1", {x, d}); }};
  }
  if (name == "example2") {
    need_params(name, params, 1, 1);
    const double t = params[0];
    need_range(name, t, 0.0, 1.0, true);
    return {name, {3, 3}, 0.0, 1.0,
            [t](double p) { return builtin_state("example2", {p, t}); }};
  }
  if (name == "tiles_noise") {
    need_params(name, params, 0, 0);
    return {name, {3, 3}, 0.0, 1.0,
            [](double t) { return builtin_state("tiles_noise", {t}); }};
  }
  if (name == "w_noise") {
    need_params(name, params, 0, 0);
    return {name, {3, 3, 3}, 0.0, 1.0,
            [](double q) { return builtin_state("w_noise", {q}); }};
  }
  if (name == "ghz_noise") {
    need_params(name, params, 0, 0);
    return {name, {2, 2, 2}, 0.0, 1.0,
            [](double x) { return builtin_state("ghz_noise", {x}); }};
  }
  fail(Err::UnknownState, "family " + name);
}

std::vector<std::string> builtin_state_names() {
  return {"bell",     "horodecki_2x4", "example1", "horodecki_3x3", "example2",
          "tiles",    "tiles_noise",   "w_noise",  "ghz_noise"};
}

std::vector<std::string> builtin_family_names() {
  return {"example1", "example2", "tiles_noise", "w_noise", "ghz_noise"};
}

std::vector<cplx> random_pure(const std::vector<int>& dims, Seed seed) {
  Rng rng = Rng::split(seed.value, kStreamPure);
  const long long D = dims_product(dims);
  std::vector<cplx> psi(D);
  double norm2 = 0.0;
  for (auto& z : psi) {
    z = cplx(rng.next_gaussian(), rng.next_gaussian());
    norm2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& z : psi) z *= inv;
  return psi;
}

DensityMatrix random_density(const std::vector<int>& dims, int rank, Seed seed) {
  const long long D = dims_product(dims);
  if (rank < 1 || rank > D)
    fail(Err::BadRank, "rank " + std::to_string(rank) + " outside 1.." + std::to_string(D));
  Rng rng = Rng::split(seed.value, kStreamDensity);
  ComplexMatrix G(static_cast<int>(D), rank);
  for (auto& z : G.a) z = cplx(rng.next_gaussian(), rng.next_gaussian());
  ComplexMatrix M = matmul(G, adjoint(G));
  const double tr = trace_of(M).real();
  M = scale(1.0 / tr, M);
  return DensityMatrix{dims, std::move(M)};
}

DensityMatrix random_separable(const std::vector<int>& dims, int terms, Seed seed) {
  if (terms < 1) fail(Err::ParamOutOfRange, "random_separable: terms must be >= 1");
  Rng rng = Rng::split(seed.value, kStreamSeparable);
  // Dirichlet-uniform weights via normalized exponentials.
  std::vector<double> w(terms);
  double wsum = 0.0;
  for (double& x : w) {
    x = -std::log(rng.next_unit());
    wsum += x;
  }
  for (double& x : w) x /= wsum;

  const long long D = dims_product(dims);
  ComplexMatrix M(static_cast<int>(D), static_cast<int>(D));
  for (int i = 0; i < terms; ++i) {
    ComplexMatrix term(1, 1);
    term.at(0, 0) = w[i];
    for (int d : dims) {
      std::vector<cplx> psi(d);
      double norm2 = 0.0;
      for (auto& z : psi) {
        z = cplx(rng.next_gaussian(), rng.next_gaussian());
        norm2 += std::norm(z);
      }
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& z : psi) z *= inv;
      term = kron(term, pure_projector(psi));
    }
    M = add(M, term);
  }
  return DensityMatrix{dims, std::move(M)};
}

ComplexMatrix random_unitary(int d, Rng& rng) {
  // Gram-Schmidt on a complex Gaussian matrix gives Haar measure.
  ComplexMatrix G(d, d);
  for (auto& z : G.a) z = cplx(rng.next_gaussian(), rng.next_gaussian());
  // Orthonormalize columns (modified Gram-Schmidt).
  for (int c = 0; c < d; ++c) {
    for (int prev = 0; prev < c; ++prev) {
      cplx proj = 0.0;
      for (int r = 0; r < d; ++r) proj += std::conj(G.at(r, prev)) * G.at(r, c);
      for (int r = 0; r < d; ++r) G.at(r, c) -= proj * G.at(r, prev);
    }
    double norm2 = 0.0;
    for (int r = 0; r < d; ++r) norm2 += std::norm(G.at(r, c));
    const double inv = 1.0 / std::sqrt(norm2);
    for (int r = 0; r < d; ++r) G.at(r, c) *= inv;
  }
  return G;
}

}  // namespace qsep
