#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qsep/density.hpp"
#include "qsep/rng.hpp"

namespace qsep {

struct Seed {
  std::uint64_t value = 1;
};

// Named one-parameter family of states, scanned for detection thresholds.
struct StateFamily {
  std::string name;
  std::vector<int> dims;
  double lo = 0.0, hi = 1.0;
  std::function<DensityMatrix(double)> generator;
};

// Registry of fixture states. Names and parameter counts:
//   bell(d)              maximally entangled projector on d x d
//   horodecki_2x4(d)     2 x 4 bound entangled state, 0 < d < 1
//   example1(x[,d])      x |xi><xi| + (1-x) horodecki_2x4(d), default d = 0.9
//   horodecki_3x3(t)     3 x 3 bound entangled state, 0 < t < 1
//   example2(p,t)        (1-p)/9 I_9 + p horodecki_3x3(t)
//   tiles()              3 x 3 PPT entangled state from the tiles product basis
//   tiles_noise(t)       (1-t)/9 I_9 + t tiles()
//   w_noise(q)           (1-q)/27 I_27 + q |phi_W><phi_W| on 3 x 3 x 3
//   ghz_noise(x)         x/8 I_8 + (1-x) |GHZ><GHZ| on 2 x 2 x 2
DensityMatrix builtin_state(const std::string& name, const std::vector<double>& params);

// One-parameter families for threshold scans: example1[d], example2(t),
// tiles_noise, w_noise, ghz_noise. `params` holds the frozen extra
// parameters (example1's d, example2's t).
StateFamily builtin_family(const std::string& name, const std::vector<double>& params);

std::vector<std::string> builtin_state_names();
std::vector<std::string> builtin_family_names();

// Haar-distributed unit vector (normalized complex Gaussian), deterministic
// per seed.
std::vector<cplx> random_pure(const std::vector<int>& dims, Seed seed);

// G G^dagger / Tr with G a (prod dims) x rank complex Gaussian matrix.
DensityMatrix random_density(const std::vector<int>& dims, int rank, Seed seed);

// Convex mixture of random pure product states: Dirichlet-uniform weights,
// Haar local factors. Separable across every party cut by construction.
DensityMatrix random_separable(const std::vector<int>& dims, int terms, Seed seed);

// Haar-distributed unitary via Gram-Schmidt on a Gaussian matrix (test aid).
ComplexMatrix random_unitary(int d, Rng& rng);

}  // namespace qsep
