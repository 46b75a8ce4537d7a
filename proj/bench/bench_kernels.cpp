// Benchmark: OpenMP kernels against the serial reference implementations.
// Prints one table row per (kernel, size): serial ms, parallel ms, speedup,
// and the max entrywise difference between the two results.
//
// Usage: qsep_bench [--smoke]
//   --smoke  tiny sizes and one repetition (CI sanity run)

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "qsep/complex_matrix.hpp"
#include "qsep/kernels.hpp"
#include "qsep/rng.hpp"

using namespace qsep;

namespace {

using Clock = std::chrono::steady_clock;

ComplexMatrix random_matrix(int rows, int cols, Rng& rng) {
  ComplexMatrix M(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) M.at(r, c) = cplx(rng.next_gaussian(), rng.next_gaussian());
  return M;
}

struct BenchCase {
  std::string name;
  std::function<ComplexMatrix()> serial;
  std::function<ComplexMatrix()> parallel;
};

double time_ms(const std::function<ComplexMatrix()>& fn, int reps, ComplexMatrix& out) {
  out = fn();  // warm-up run also produces the comparison value
  const auto start = Clock::now();
  for (int k = 0; k < reps; ++k) out = fn();
  const auto stop = Clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

void run_case(const BenchCase& bc, int reps) {
  ComplexMatrix serial_out(1, 1), parallel_out(1, 1);
  const double serial_ms = time_ms(bc.serial, reps, serial_out);
  const double parallel_ms = time_ms(bc.parallel, reps, parallel_out);
  const double diff = max_abs_diff(serial_out, parallel_out);
  std::printf("%-28s %10.3f %10.3f %8.2fx %10.2e\n", bc.name.c_str(), serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, diff);
}

}  // namespace

int main(int argc, char** argv) {
  bool smoke = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--smoke") == 0) smoke = true;

  const int side = smoke ? 32 : 256;            // matmul/realign operand side
  const int kron_side = smoke ? 12 : 48;        // kron factor side
  const int local_dim = smoke ? 2 : 4;          // per-party dimension for 3 parties
  const int reps = smoke ? 1 : 5;

  Rng rng = Rng::split(2024, 1);
  const ComplexMatrix A = random_matrix(side, side, rng);
  const ComplexMatrix B = random_matrix(side, side, rng);
  const ComplexMatrix KA = random_matrix(kron_side, kron_side, rng);
  const ComplexMatrix KB = random_matrix(kron_side, kron_side, rng);

  // realign splits a (m*n) x (m*n) matrix into m x m blocks of side n.
  const int m = smoke ? 8 : 16;
  const int n = side / m;
  const std::vector<int> dims{local_dim, local_dim, local_dim};
  const int D = local_dim * local_dim * local_dim;
  const ComplexMatrix T = random_matrix(D, D, rng);

  std::vector<BenchCase> cases;
  cases.push_back({"matmul " + std::to_string(side), [&] { return ref::matmul(A, B); },
                   [&] { return matmul(A, B); }});
  cases.push_back({"kron " + std::to_string(kron_side), [&] { return ref::kron(KA, KB); },
                   [&] { return kron(KA, KB); }});
  cases.push_back({"realign " + std::to_string(side), [&] { return ref::realign(A, m, n); },
                   [&] { return realign(A, m, n); }});
  cases.push_back({"partial_trace " + std::to_string(D),
                   [&] { return ref::partial_trace_raw(T, dims, {0, 2}); },
                   [&] { return partial_trace_raw(T, dims, {0, 2}); }});
  cases.push_back({"partial_transpose " + std::to_string(D),
                   [&] { return ref::partial_transpose_raw(T, dims, {1}); },
                   [&] { return partial_transpose_raw(T, dims, {1}); }});
  cases.push_back({"permute " + std::to_string(D),
                   [&] { return ref::permute_raw(T, dims, {2, 0, 1}); },
                   [&] { return permute_raw(T, dims, {2, 0, 1}); }});

  std::printf("%-28s %10s %10s %9s %10s\n", "kernel/size", "serial ms", "openmp ms", "speedup",
              "max diff");
  for (const BenchCase& bc : cases) run_case(bc, reps);
  return 0;
}
