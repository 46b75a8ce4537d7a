#include <cmath>
#include <vector>

#include "doctest.h"
#include "qsep/criteria.hpp"
#include "qsep/density.hpp"
#include "qsep/errors.hpp"
#include "qsep/kernels.hpp"
#include "qsep/spectra.hpp"
#include "qsep/states.hpp"
#include "test_helpers.hpp"

using namespace qsep;

namespace {

DensityMatrix pure_product_state(const std::vector<int>& dims, Seed seed) {
  Rng rng = Rng::split(seed.value, kStreamPure);
  ComplexMatrix total(1, 1);
  total.at(0, 0) = 1.0;
  for (int d : dims) {
    std::vector<cplx> psi(d);
    double n2 = 0.0;
    for (cplx& z : psi) {
      z = cplx(rng.next_gaussian(), rng.next_gaussian());
      n2 += std::norm(z);
    }
    ComplexMatrix proj(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) proj.at(r, c) = psi[r] * std::conj(psi[c]) / n2;
    total = kron(total, proj);
  }
  return validate_density(dims, total);
}

}  // namespace

TEST_CASE("augmented matrix has the documented shape and norm on |00><00|") {
  // For the pure product |00><00| with mu = nu = (1), the augmented matrix is
  // 5x5 (2x2 system: 1+4 rows/cols) with trace norm exactly 2 = bound.
  ComplexMatrix m(4, 4);
  m.at(0, 0) = 1.0;
  const DensityMatrix rho = validate_density({2, 2}, m);
  const ParamPair p{{1.0}, {1.0}};
  const ComplexMatrix Q = build_q_matrix(rho, p);
  CHECK(Q.rows == 5);
  CHECK(Q.cols == 5);
  CHECK(trace_norm(Q) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(q_bound(p) == doctest::Approx(2.0).epsilon(1e-15));
  const CriterionReport rep = theorem1_margin(rho, p);
  CHECK(std::abs(rep.margin) <= 1e-9);
  CHECK(rep.verdict == Verdict::INCONCLUSIVE);
}

TEST_CASE("augmented matrix blocks carry marginals and the realignment") {
  const DensityMatrix rho = random_density({2, 3}, 3, Seed{51});
  const ParamPair p{{1.5, -0.25}, {0.5, 2.0, -1.0}};
  const ComplexMatrix Q = build_q_matrix(rho, p);
  REQUIRE(Q.rows == 2 + 4);
  REQUIRE(Q.cols == 3 + 9);
  // Top-left block: mu nu^T (state has unit trace).
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(Q.at(i, j) - cplx(p.mu[i] * p.nu[j])) <= 1e-12);
  // Top-right block: mu Vec(rho_B)^T.
  const std::vector<cplx> vb = vectorize(partial_trace(rho, {1}).mat);
  for (int i = 0; i < 2; ++i)
    for (size_t j = 0; j < vb.size(); ++j)
      CHECK(std::abs(Q.at(i, 3 + static_cast<int>(j)) - p.mu[i] * vb[j]) <= 1e-12);
  // Bottom-left block: Vec(rho_A) nu^T.
  const std::vector<cplx> va = vectorize(partial_trace(rho, {0}).mat);
  for (size_t i = 0; i < va.size(); ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(Q.at(2 + static_cast<int>(i), j) - va[i] * p.nu[j]) <= 1e-12);
  // Bottom-right block: the realignment itself.
  const ComplexMatrix R = realign(rho.mat, 2, 3);
  for (int i = 0; i < R.rows; ++i)
    for (int j = 0; j < R.cols; ++j)
      CHECK(std::abs(Q.at(2 + i, 3 + j) - R.at(i, j)) <= 1e-12);
}

TEST_CASE("the augmented construction is linear in the state") {
  const DensityMatrix x = random_density({2, 2}, 2, Seed{52});
  const DensityMatrix y = random_density({2, 2}, 4, Seed{53});
  const ParamPair p{{1.0, 2.0}, {0.5}};
  const double w = 0.3;
  ComplexMatrix mix = add(scale(w, x.mat), scale(1 - w, y.mat));
  const DensityMatrix m = validate_density({2, 2}, mix);
  const ComplexMatrix lhs = build_q_matrix(m, p);
  const ComplexMatrix rhs =
      add(scale(w, build_q_matrix(x, p)), scale(1 - w, build_q_matrix(y, p)));
  CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
}

TEST_CASE("pure product states sit exactly on the bound") {
  for (int i = 0; i < 25; ++i) {
    const DensityMatrix rho = pure_product_state({2, 3}, Seed{static_cast<uint64_t>(60 + i)});
    Rng prng = Rng::split(777, static_cast<uint64_t>(i));
    ParamPair p;
    const int n = 1 + static_cast<int>(prng.next_u64() % 4);
    const int m = 1 + static_cast<int>(prng.next_u64() % 4);
    for (int k = 0; k < n; ++k) p.mu.push_back(2.0 * prng.next_unit() - 1.0);
    for (int k = 0; k < m; ++k) p.nu.push_back(2.0 * prng.next_unit() - 1.0);
    const CriterionReport rep = theorem1_margin(rho, p);
    CHECK(std::abs(rep.margin) <= 1e-9);
  }
}

TEST_CASE("scalar instance reproduces the general construction exactly") {
  const DensityMatrix rho = builtin_state("tiles", {});
  const CriterionReport a = shi_margin(rho, 1.25, -0.75);
  const CriterionReport b = theorem1_margin(rho, ParamPair{{1.25}, {-0.75}});
  CHECK(a.lhs == b.lhs);
  CHECK(a.rhs == b.rhs);
  CHECK(a.criterion == "shi");
  const CriterionReport c = sun_margin(rho, 1.25, -0.75, 1);
  CHECK(c.lhs == a.lhs);
  CHECK(c.criterion == "sun");
  CHECK_THROWS_AS(sun_margin(rho, 1.0, 1.0, 0), Error);
}

TEST_CASE("plain realignment margins on known states") {
  const CriterionReport bell = ccnr_margin(builtin_state("bell", {2}));
  CHECK(bell.lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(bell.rhs == 1.0);
  CHECK(bell.verdict == Verdict::ENTANGLED);

  ComplexMatrix mixed = scale(1.0 / 9.0, ComplexMatrix::identity(9));
  const CriterionReport mm = ccnr_margin(validate_density({3, 3}, mixed));
  CHECK(mm.lhs == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(mm.verdict == Verdict::INCONCLUSIVE);
}

TEST_CASE("covariance-style margins on known states") {
  const DensityMatrix prod = pure_product_state({2, 2}, Seed{71});
  const CriterionReport z = zhang_margin(prod);
  CHECK(std::abs(z.lhs) <= 1e-9);  // R(rho - rhoA x rhoB) vanishes on products
  CHECK(z.verdict == Verdict::INCONCLUSIVE);

  const CriterionReport zb = zhang_margin(builtin_state("bell", {2}));
  CHECK(zb.lhs == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(zb.rhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(zb.verdict == Verdict::ENTANGLED);
}

TEST_CASE("partial transpose test on known states") {
  const CriterionReport bell = ppt_min_eigenvalue(builtin_state("bell", {2}));
  CHECK(bell.lhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(bell.verdict == Verdict::ENTANGLED);
  CHECK(ppt_min_eigenvalue(builtin_state("tiles", {})).verdict == Verdict::INCONCLUSIVE);
  CHECK(ppt_min_eigenvalue(builtin_state("horodecki_2x4", {0.5})).verdict ==
        Verdict::INCONCLUSIVE);
}

TEST_CASE("criterion values are invariant under local unitaries") {
  const DensityMatrix rho = builtin_state("example1", {0.4});
  Rng rng = Rng::split(81, 0);
  const ComplexMatrix UA = random_unitary(2, rng);
  const ComplexMatrix UB = random_unitary(4, rng);
  const ComplexMatrix U = kron(UA, UB);
  const ComplexMatrix rotated = matmul(matmul(U, rho.mat), adjoint(U));
  const DensityMatrix rho2 = validate_density({2, 4}, rotated);

  const ParamPair p{{1.0, 2.0}, {2.0, 1.0}};
  // Lemma: the trace norm of the augmented matrix (hence every margin here)
  // only depends on the local-unitary orbit.
  CHECK(theorem1_margin(rho, p).lhs == doctest::Approx(theorem1_margin(rho2, p).lhs).epsilon(1e-8));
  CHECK(ccnr_margin(rho).lhs == doctest::Approx(ccnr_margin(rho2).lhs).epsilon(1e-8));
  CHECK(zhang_margin(rho).lhs == doctest::Approx(zhang_margin(rho2).lhs).epsilon(1e-8));
  CHECK(ppt_min_eigenvalue(rho).lhs ==
        doctest::Approx(ppt_min_eigenvalue(rho2).lhs).epsilon(1e-8));
}

TEST_CASE("no false positives on random separable states") {
  // The acceptance gate runs >= 1000 states; keep the unit suite lighter.
  for (int i = 0; i < 150; ++i) {
    const Seed seed{static_cast<uint64_t>(1000 + i)};
    const std::vector<int> dims = (i % 2 == 0) ? std::vector<int>{2, 2} : std::vector<int>{2, 3};
    const DensityMatrix rho = random_separable(dims, 4 + i % 5, seed);
    Rng prng = Rng::split(9000, static_cast<uint64_t>(i));
    ParamPair p;
    const int n = 1 + static_cast<int>(prng.next_u64() % 3);
    const int m = 1 + static_cast<int>(prng.next_u64() % 3);
    for (int k = 0; k < n; ++k) p.mu.push_back(4.0 * prng.next_unit() - 2.0);
    for (int k = 0; k < m; ++k) p.nu.push_back(4.0 * prng.next_unit() - 2.0);
    CHECK(theorem1_margin(rho, p).verdict == Verdict::INCONCLUSIVE);
    CHECK(ccnr_margin(rho).verdict == Verdict::INCONCLUSIVE);
    CHECK(zhang_margin(rho).verdict == Verdict::INCONCLUSIVE);
    CHECK(ppt_min_eigenvalue(rho).verdict == Verdict::INCONCLUSIVE);
  }
}

TEST_CASE("margins never exceed the pure-state ceilings") {
  // For any pure state, |Q|_tr - bound <= (|mu|+1)(|nu|+1) - bound terms; the
  // operative ceilings: lhs <= sqrt((|mu|^2+1)(|nu|^2+1)) + 2 and the
  // realignment norm of a d x d pure state is at most d.
  for (int i = 0; i < 60; ++i) {
    const std::vector<cplx> psi = random_pure({3, 3}, Seed{static_cast<uint64_t>(500 + i)});
    const DensityMatrix rho = validate_density({3, 3}, pure_projector(psi));
    Rng prng = Rng::split(4242, static_cast<uint64_t>(i));
    ParamPair p;
    for (int k = 0; k < 2; ++k) p.mu.push_back(3.0 * prng.next_unit());
    for (int k = 0; k < 2; ++k) p.nu.push_back(3.0 * prng.next_unit());
    const CriterionReport rep = theorem1_margin(rho, p);
    CHECK(rep.lhs <= rep.rhs + 2.0 + 1e-6);
    CHECK(ccnr_margin(rho).lhs <= 3.0 + 1e-9);
  }
}

TEST_CASE("threshold scan brackets the example1 flip point") {
  const StateFamily fam = builtin_family("example1", {});
  const ParamPair p{{11.9967, 12.9195, 11.6808, 12.1705, 11.4476},
                    {12.5025, 11.5102, 12.0119, 12.3982, 12.7818}};
  const CriterionFn crit = [p](const DensityMatrix& r) { return theorem1_margin(r, p); };
  int evals = 0;
  const ScanObserver obs = [&](double, const CriterionReport&) { ++evals; };
  const ThresholdResult res = threshold_scan(fam, crit, 0.1, 0.5, 1e-5, obs);
  CHECK(std::abs(res.threshold - 0.232959) <= 5e-4);
  CHECK(res.bracket_hi - res.bracket_lo <= 1e-5);
  CHECK(res.bracket_lo <= res.threshold);
  CHECK(res.threshold <= res.bracket_hi);
  CHECK(res.margin_lo < 0.0);
  CHECK(res.margin_hi > 0.0);
  CHECK(evals == res.iterations + 2);  // both endpoints plus one per bisection step
}

TEST_CASE("threshold scan error contract") {
  const StateFamily fam = builtin_family("example1", {});
  const CriterionFn ccnr = [](const DensityMatrix& r) { return ccnr_margin(r); };
  // Plain realignment stays inconclusive on this family over [0, 0.2].
  CHECK_THROWS_AS(threshold_scan(fam, ccnr, 0.0, 0.2, 1e-4), Error);
  try {
    threshold_scan(fam, ccnr, 0.0, 0.2, 1e-4);
  } catch (const Error& e) {
    CHECK(e.code() == Err::NoSignChange);
  }
  const ParamPair p{{1.0}, {1.0}};
  const CriterionFn shi = [p](const DensityMatrix& r) { return theorem1_margin(r, p); };
  CHECK_THROWS_AS(threshold_scan(fam, shi, 0.5, 0.1, 1e-4), Error);   // reversed bracket
  CHECK_THROWS_AS(threshold_scan(fam, shi, 0.1, 0.5, 0.0), Error);    // nonpositive tol
  CHECK_THROWS_AS(threshold_scan(fam, shi, 0.1, 0.5, 1e-18), Error);  // below resolution
  try {
    threshold_scan(fam, shi, 0.1, 0.5, 1e-18);
  } catch (const Error& e) {
    CHECK(e.code() == Err::TolTooSmall);
  }
}

TEST_CASE("criteria require bipartite input") {
  const DensityMatrix ghz = builtin_state("ghz_noise", {0.2});
  CHECK_THROWS_AS(ccnr_margin(ghz), Error);
  try {
    ccnr_margin(ghz);
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotBipartite);
  }
}
