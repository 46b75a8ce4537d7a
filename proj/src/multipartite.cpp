#include "qsep/multipartite.hpp"

#include <cmath>
#include <numeric>

#include "qsep/kernels.hpp"
#include "qsep/spectra.hpp"

namespace qsep {

namespace {

constexpr int kMaxParties = 6;

double sq_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

void require_equal_dims(const DensityMatrix& rho, const char* who) {
  for (int d : rho.dims)
    if (d != rho.dims[0])
      fail(Err::UnequalLocalDims, std::string(who) + ": local dimensions must all match");
}

void require_tripartite(const DensityMatrix& rho, const char* who) {
  if (rho.parties() != 3)
    fail(Err::DimMismatch, std::string(who) + " needs exactly 3 subsystems");
}

}  // namespace

Bipartition Bipartition::of(int solo, int parties) {
  if (solo < 0 || solo >= parties) fail(Err::BadSubsystemIndex, "bipartition solo index");
  Bipartition b;
  b.solo = solo;
  for (int k = 0; k < parties; ++k)
    if (k != solo) b.rest.push_back(k);
  return b;
}

DensityMatrix permute_systems(const DensityMatrix& rho, const std::vector<int>& perm) {
  ComplexMatrix out = permute_raw(rho.mat, rho.dims, perm);
  std::vector<int> new_dims(perm.size());
  for (size_t p = 0; p < perm.size(); ++p) new_dims[p] = rho.dims[perm[p]];
  return DensityMatrix{new_dims, std::move(out)};
}

double bipartition_q_norm(const DensityMatrix& rho, const Bipartition& b, const ParamPair& p) {
  require_tripartite(rho, "bipartition_q_norm");
  if (b.solo < 0 || b.solo >= rho.parties() ||
      b.rest != Bipartition::of(b.solo, rho.parties()).rest)
    fail(Err::BadSubsystemIndex, "bipartition does not cover the three parties");
  std::vector<int> perm{b.solo};
  perm.insert(perm.end(), b.rest.begin(), b.rest.end());
  const DensityMatrix moved = permute_systems(rho, perm);
  const DensityMatrix cut{{moved.dims[0], moved.dims[1] * moved.dims[2]}, moved.mat};
  return trace_norm(build_q_matrix(cut, p));
}

double script_q_average(const DensityMatrix& rho, const ParamPair& p) {
  require_tripartite(rho, "script_q_average");
  std::array<double, 3> norms{};
#pragma omp parallel for schedule(static)
  for (int solo = 0; solo < 3; ++solo)
    norms[solo] = bipartition_q_norm(rho, Bipartition::of(solo, 3), p);
  // Fixed-order reduction keeps the value schedule-independent.
  return (norms[0] + norms[1] + norms[2]) / 3.0;
}

CriterionReport biseparability_margin(const DensityMatrix& rho, const ParamPair& p,
                                      double tau) {
  require_tripartite(rho, "biseparability_margin");
  require_equal_dims(rho, "biseparability_margin");
  const double d = rho.dims[0];
  const double lhs = script_q_average(rho, p);
  const double rhs = q_bound(p) + 2.0 * (d - 1.0) / 3.0;
  CriterionReport rep = make_report("bisep", lhs, rhs, tau);
  return rep;
}

ComplexMatrix generalized_qr(const DensityMatrix& rho, const MuFamily& fam) {
  const int n = rho.parties();
  if (n < 2 || n > kMaxParties)
    fail(Err::BadFamily, "party count " + std::to_string(n) + " outside 2.." +
                             std::to_string(kMaxParties));
  const int q = fam.q;
  if (q < 0 || q > n - 2) fail(Err::BadFamily, "augmentation start q out of range");
  const int aug = n - q;  // number of augmented parties
  if (static_cast<int>(fam.vectors.size()) != aug)
    fail(Err::BadFamily, "expected " + std::to_string(aug) + " parameter vectors, got " +
                             std::to_string(fam.vectors.size()));
  for (const auto& v : fam.vectors)
    if (v.empty()) fail(Err::BadFamily, "empty parameter vector");

  const std::vector<int>& dims = rho.dims;
  std::vector<int> mlen(n, 0), s(n, 0);
  for (int k = q; k < n; ++k) {
    mlen[k] = static_cast<int>(fam.vectors[k - q].size());
    s[k] = mlen[k] + dims[k] * dims[k];
  }
  long long pre = 1;
  for (int k = 0; k < q; ++k) pre *= dims[k];
  long long rows = pre * s[q];
  long long cols = pre;
  for (int k = q + 1; k < n; ++k) cols *= s[k];

  ComplexMatrix QR(static_cast<int>(rows), static_cast<int>(cols));

  // One block of the output per subset S of the augmented parties: parties in
  // S are traced out of rho and land in their mu-coordinate range, scaled by
  // the product of mu entries; the rest keep their vectorized indices.
  for (int mask = 0; mask < (1 << aug); ++mask) {
    std::vector<int> in_S, kept;  // party indices
    for (int k = 0; k < n; ++k) {
      if (k >= q && ((mask >> (k - q)) & 1))
        in_S.push_back(k);
      else
        kept.push_back(k);
    }

    ComplexMatrix T(1, 1);
    if (kept.empty())
      T.at(0, 0) = trace_of(rho.mat);
    else
      T = partial_trace_raw(rho.mat, dims, kept);

    const int nk = static_cast<int>(kept.size());
    const int Dk = T.rows;

    // Mixed-radix iteration over the mu coordinates of S.
    const int ns = static_cast<int>(in_S.size());
    std::vector<int> mu_idx(ns, 0);
    bool more = true;
    while (more) {
      double scale = 1.0;
      for (int t = 0; t < ns; ++t) scale *= fam.vectors[in_S[t] - q][mu_idx[t]];

      for (int r = 0; r < Dk; ++r) {
        // Per-party indices of the kept block.
        std::vector<int> ri(n, 0), ci(n, 0);
        {
          long long rem = r;
          for (int t = nk - 1; t >= 0; --t) {
            ri[kept[t]] = static_cast<int>(rem % dims[kept[t]]);
            rem /= dims[kept[t]];
          }
        }
        for (int c = 0; c < Dk; ++c) {
          {
            long long rem = c;
            for (int t = nk - 1; t >= 0; --t) {
              ci[kept[t]] = static_cast<int>(rem % dims[kept[t]]);
              rem /= dims[kept[t]];
            }
          }

          long long row = 0;
          for (int k = 0; k < q; ++k) row = row * dims[k] + ri[k];
          // Party q sits in the row index; it is in_S[0] whenever augmented
          // because in_S ascends and q is the smallest augmented party.
          if (mask & 1)
            row = row * s[q] + mu_idx[0];
          else
            row = row * s[q] + mlen[q] + ci[q] * dims[q] + ri[q];

          long long col = 0;
          for (int k = 0; k < q; ++k) col = col * dims[k] + ci[k];
          for (int k = q + 1; k < n; ++k) {
            int a;
            if ((mask >> (k - q)) & 1) {
              int pos = 0;
              while (in_S[pos] != k) ++pos;
              a = mu_idx[pos];
            } else {
              a = mlen[k] + ci[k] * dims[k] + ri[k];
            }
            col = col * s[k] + a;
          }

          QR.at(static_cast<int>(row), static_cast<int>(col)) += scale * T.at(r, c);
        }
      }

      // Advance the mu odometer.
      more = false;
      for (int t = ns - 1; t >= 0; --t) {
        if (++mu_idx[t] < mlen[in_S[t]]) {
          more = true;
          break;
        }
        mu_idx[t] = 0;
      }
    }
  }
  return QR;
}

CriterionReport full_separability_margin(const DensityMatrix& rho, const MuFamily& fam,
                                         double tau) {
  const double lhs = trace_norm(generalized_qr(rho, fam));
  double rhs = 1.0;
  for (const auto& v : fam.vectors) rhs *= std::sqrt(sq_norm(v) + 1.0);
  return make_report("fullsep", lhs, rhs, tau);
}

BoundReport gme_concurrence_lower_bound(const DensityMatrix& rho, const ParamPair& p) {
  require_tripartite(rho, "gme_concurrence_lower_bound");
  require_equal_dims(rho, "gme_concurrence_lower_bound");
  const double d = rho.dims[0];
  const double script_q = script_q_average(rho, p);
  const double rhs = q_bound(p) + 2.0 * (d - 1.0) / 3.0;
  BoundReport out;
  out.measure = "gme";
  out.bound = (script_q - rhs) / std::sqrt(d * (d - 1.0));
  out.params = p;
  out.d = static_cast<int>(d);
  out.vacuous = out.bound <= 0.0;
  return out;
}

}  // namespace qsep
