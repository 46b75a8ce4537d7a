#include <cmath>
#include <vector>

#include "doctest.h"
#include "qsep/errors.hpp"
#include "qsep/kernels.hpp"
#include "qsep/rng.hpp"
#include "qsep/states.hpp"
#include "test_helpers.hpp"

using namespace qsep;
using qtest::mat;
using qtest::random_matrix;

TEST_CASE("vectorize column-stacks") {
  const ComplexMatrix A = mat(2, 2, {1, 2, 3, 4});
  const std::vector<cplx> v = vectorize(A);
  REQUIRE(v.size() == 4);
  CHECK(v[0] == cplx(1));
  CHECK(v[1] == cplx(3));
  CHECK(v[2] == cplx(2));
  CHECK(v[3] == cplx(4));
}

TEST_CASE("transpose and adjoint") {
  const ComplexMatrix A = mat(2, 3, {1, 2, 3, 4, 5, cplx(0, 1)});
  const ComplexMatrix T = transpose(A);
  CHECK(T.rows == 3);
  CHECK(T.cols == 2);
  CHECK(T.at(2, 1) == cplx(0, 1));
  const ComplexMatrix D = adjoint(A);
  CHECK(D.at(2, 1) == cplx(0, -1));
}

TEST_CASE("matmul agrees with a hand computation and validates shapes") {
  const ComplexMatrix A = mat(2, 2, {1, 2, 3, 4});
  const ComplexMatrix B = mat(2, 2, {5, 6, 7, 8});
  const ComplexMatrix C = matmul(A, B);
  CHECK(C.at(0, 0) == cplx(19));
  CHECK(C.at(0, 1) == cplx(22));
  CHECK(C.at(1, 0) == cplx(43));
  CHECK(C.at(1, 1) == cplx(50));
  const ComplexMatrix R = mat(3, 2, {1, 0, 0, 1, 1, 1});
  CHECK_THROWS_AS(matmul(A, R), Error);
  try {
    matmul(A, R);
  } catch (const Error& e) {
    CHECK(e.code() == Err::ShapeMismatch);
  }
}

TEST_CASE("kron layout matches the row-major composite convention") {
  const ComplexMatrix A = mat(2, 2, {1, 2, 3, 4});
  const ComplexMatrix B = mat(2, 2, {0, 5, 6, 7});
  const ComplexMatrix K = kron(A, B);
  REQUIRE(K.rows == 4);
  // (i_a, i_b),(j_a, j_b) entry = A(i_a, j_a) * B(i_b, j_b)
  CHECK(K.at(0, 1) == cplx(5));    // A(0,0)*B(0,1)
  CHECK(K.at(0, 3) == cplx(10));   // A(0,1)*B(0,1)
  CHECK(K.at(3, 2) == cplx(4. * 6.));
  const ComplexMatrix I6 = kron(ComplexMatrix::identity(2), ComplexMatrix::identity(3));
  CHECK(max_abs_diff(I6, ComplexMatrix::identity(6)) == 0.0);
}

TEST_CASE("realign maps a product to the outer product of vectorizations") {
  Rng rng = Rng::split(11, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix A = random_matrix(3, 3, rng);
    const ComplexMatrix B = random_matrix(2, 2, rng);
    const ComplexMatrix R = realign(kron(A, B), 3, 2);
    const std::vector<cplx> va = vectorize(A), vb = vectorize(B);
    ComplexMatrix outer(static_cast<int>(va.size()), static_cast<int>(vb.size()));
    for (int r = 0; r < outer.rows; ++r)
      for (int c = 0; c < outer.cols; ++c) outer.at(r, c) = va[r] * vb[c];
    CHECK(max_abs_diff(R, outer) <= 1e-12);
  }
}

TEST_CASE("realign is linear") {
  Rng rng = Rng::split(12, 0);
  const ComplexMatrix X = random_matrix(6, 6, rng);
  const ComplexMatrix Y = random_matrix(6, 6, rng);
  const cplx a(0.3, -1.1), b(2.0, 0.7);
  const ComplexMatrix lhs = realign(add(scale(a, X), scale(b, Y)), 2, 3);
  const ComplexMatrix rhs = add(scale(a, realign(X, 2, 3)), scale(b, realign(Y, 2, 3)));
  CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
}

TEST_CASE("realign on a rectangular block grid has the documented shape") {
  // 2x2 grid of 3x3 blocks: 6x6 in, (2*2)x(3*3) out.
  Rng rng = Rng::split(13, 0);
  const ComplexMatrix Z = random_matrix(6, 6, rng);
  const ComplexMatrix R = realign(Z, 2, 3);
  CHECK(R.rows == 4);
  CHECK(R.cols == 9);
  // Row j*m+i holds block (i,j) column-stacked: entry (j*2+i, c*3+r) = Z(i*3+r, j*3+c).
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          CHECK(R.at(j * 2 + i, c * 3 + r) == Z.at(i * 3 + r, j * 3 + c));
  CHECK_THROWS_AS(realign(Z, 4, 3), Error);
}

TEST_CASE("vectorize of a triple product factors through a Kronecker matrix") {
  Rng rng = Rng::split(14, 0);
  const ComplexMatrix A = random_matrix(2, 3, rng);
  const ComplexMatrix B = random_matrix(3, 4, rng);
  const ComplexMatrix C = random_matrix(4, 5, rng);
  const std::vector<cplx> lhs = vectorize(matmul(matmul(A, B), C));
  const ComplexMatrix K = kron(transpose(C), A);
  const std::vector<cplx> vb = vectorize(B);
  ComplexMatrix col(static_cast<int>(vb.size()), 1);
  for (size_t i = 0; i < vb.size(); ++i) col.at(static_cast<int>(i), 0) = vb[i];
  const ComplexMatrix rhs = matmul(K, col);
  REQUIRE(static_cast<int>(lhs.size()) == rhs.rows);
  double worst = 0.0;
  for (size_t i = 0; i < lhs.size(); ++i)
    worst = std::max(worst, std::abs(lhs[i] - rhs.at(static_cast<int>(i), 0)));
  CHECK(worst <= 1e-10);
}

TEST_CASE("partial trace of a maximally entangled projector is maximally mixed") {
  const DensityMatrix bell = builtin_state("bell", {2});
  for (int keep = 0; keep < 2; ++keep) {
    const DensityMatrix red = partial_trace(bell, {keep});
    REQUIRE(red.side() == 2);
    CHECK(std::abs(red.mat.at(0, 0) - cplx(0.5)) <= 1e-12);
    CHECK(std::abs(red.mat.at(1, 1) - cplx(0.5)) <= 1e-12);
    CHECK(std::abs(red.mat.at(0, 1)) <= 1e-12);
  }
}

TEST_CASE("partial trace composes and preserves trace") {
  const DensityMatrix rho = random_density({2, 2, 2}, 5, Seed{42});
  // Tracing out C then B equals tracing out {B,C} at once.
  const ComplexMatrix once = partial_trace_raw(rho.mat, {2, 2, 2}, {0});
  const ComplexMatrix bc = partial_trace_raw(rho.mat, {2, 2, 2}, {0, 1});
  const ComplexMatrix twice = partial_trace_raw(bc, {2, 2}, {0});
  CHECK(max_abs_diff(once, twice) <= 1e-13);
  CHECK(std::abs(trace_of(once) - cplx(1.0)) <= 1e-12);
}

TEST_CASE("partial trace on a diagonal fixture") {
  // diag(1,2,3,4) on 2x2: tracing subsystem 1 sums adjacent pairs.
  const ComplexMatrix D = mat(4, 4, {1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 3, 0, 0, 0, 0, 4});
  const ComplexMatrix A = partial_trace_raw(D, {2, 2}, {0});
  CHECK(A.at(0, 0) == cplx(3));
  CHECK(A.at(1, 1) == cplx(7));
  const ComplexMatrix B = partial_trace_raw(D, {2, 2}, {1});
  CHECK(B.at(0, 0) == cplx(4));
  CHECK(B.at(1, 1) == cplx(6));
}

TEST_CASE("partial transpose is an involution with the documented Bell form") {
  const DensityMatrix bell = builtin_state("bell", {2});
  const ComplexMatrix pt = partial_transpose(bell, 1);
  const ComplexMatrix expect = mat(4, 4, {0.5, 0, 0, 0, 0, 0, 0.5, 0, 0, 0.5, 0, 0, 0, 0, 0, 0.5});
  CHECK(max_abs_diff(pt, expect) <= 1e-12);
  const ComplexMatrix back = partial_transpose_raw(pt, {2, 2}, 1);
  CHECK(max_abs_diff(back, bell.mat) == 0.0);

  const DensityMatrix rho = random_density({2, 3}, 4, Seed{15});
  const ComplexMatrix pt0 = partial_transpose_raw(rho.mat, {2, 3}, 0);
  CHECK(max_abs_diff(partial_transpose_raw(pt0, {2, 3}, 0), rho.mat) == 0.0);
}

TEST_CASE("permute_raw realizes factor swaps of Kronecker products") {
  Rng rng = Rng::split(16, 0);
  const ComplexMatrix A = random_matrix(2, 2, rng);
  const ComplexMatrix B = random_matrix(3, 3, rng);
  const ComplexMatrix AB = kron(A, B);
  const ComplexMatrix swapped = permute_raw(AB, {2, 3}, {1, 0});
  CHECK(max_abs_diff(swapped, kron(B, A)) <= 1e-13);

  const ComplexMatrix C = random_matrix(2, 2, rng);
  const ComplexMatrix ABC = kron(kron(A, B), C);
  // perm[p] = original subsystem placed at slot p: (C, A, B).
  const ComplexMatrix rot = permute_raw(ABC, {2, 3, 2}, {2, 0, 1});
  CHECK(max_abs_diff(rot, kron(kron(C, A), B)) <= 1e-13);
  const ComplexMatrix ident = permute_raw(ABC, {2, 3, 2}, {0, 1, 2});
  CHECK(max_abs_diff(ident, ABC) == 0.0);
}

TEST_CASE("subsystem argument validation") {
  const ComplexMatrix M = ComplexMatrix::identity(4);
  CHECK_THROWS_AS(partial_trace_raw(M, {2, 3}, {0}), Error);       // side mismatch
  CHECK_THROWS_AS(partial_trace_raw(M, {2, 2}, {}), Error);        // empty keep
  CHECK_THROWS_AS(partial_trace_raw(M, {2, 2}, {1, 0}), Error);    // not ascending
  CHECK_THROWS_AS(partial_trace_raw(M, {2, 2}, {0, 0}), Error);    // repeated
  CHECK_THROWS_AS(partial_trace_raw(M, {2, 2}, {2}), Error);       // out of range
  CHECK_THROWS_AS(partial_transpose_raw(M, {2, 2}, -1), Error);
  CHECK_THROWS_AS(partial_transpose_raw(M, {2, 2}, 2), Error);
  CHECK_THROWS_AS(permute_raw(M, {2, 2}, {0}), Error);
  CHECK_THROWS_AS(permute_raw(M, {2, 2}, {0, 0}), Error);
  try {
    permute_raw(M, {2, 2}, {0, 2});
  } catch (const Error& e) {
    CHECK(e.code() == Err::BadPermutation);
  }
  const ComplexMatrix R = ComplexMatrix(3, 4);
  CHECK_THROWS_AS(partial_trace_raw(R, {2, 2}, {0}), Error);  // non-square
}

TEST_CASE("parallel kernels match the serial reference bitwise") {
  Rng rng = Rng::split(17, 0);
  const ComplexMatrix A = random_matrix(12, 12, rng);
  const ComplexMatrix B = random_matrix(12, 12, rng);
  CHECK(max_abs_diff(matmul(A, B), ref::matmul(A, B)) == 0.0);
  CHECK(max_abs_diff(kron(A, B), ref::kron(A, B)) == 0.0);
  const ComplexMatrix Z = random_matrix(12, 12, rng);
  CHECK(max_abs_diff(realign(Z, 3, 4), ref::realign(Z, 3, 4)) == 0.0);
  const ComplexMatrix M = random_matrix(12, 12, rng);
  CHECK(max_abs_diff(partial_trace_raw(M, {2, 3, 2}, {1}),
                     ref::partial_trace_raw(M, {2, 3, 2}, {1})) == 0.0);
  CHECK(max_abs_diff(partial_trace_raw(M, {2, 3, 2}, {0, 2}),
                     ref::partial_trace_raw(M, {2, 3, 2}, {0, 2})) == 0.0);
  CHECK(max_abs_diff(partial_transpose_raw(M, {2, 3, 2}, 1),
                     ref::partial_transpose_raw(M, {2, 3, 2}, 1)) == 0.0);
  CHECK(max_abs_diff(permute_raw(M, {2, 3, 2}, {2, 1, 0}),
                     ref::permute_raw(M, {2, 3, 2}, {2, 1, 0})) == 0.0);
}
