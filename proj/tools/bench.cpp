// Compares the parallel kernels against the serial brute-force references:
// superoperator construction (tensor fast path vs elementwise traces),
// trace-out, and one end-to-end minimization.

#include <chrono>
#include <cstdio>
#include <random>

#include "qam/io.hpp"
#include "qam/linalg.hpp"
#include "qam/minimizer.hpp"
#include "qam/oracle.hpp"
#include "qam/superop.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

// Best of `reps` timed runs after one warm-up call.
template <typename F>
double best_ms(int reps, F&& work) {
  work();
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    work();
    const double ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    best = std::min(best, ms);
  }
  return best;
}

void bench_superop(int n, std::mt19937_64& rng) {
  const auto u = qam::haar_unitary(qam::qubit_dim(n), rng);
  const auto basis = qam::comp_op_basis(n);
  const int reps = n >= 4 ? 1 : 3;

  const auto fast = qam::conj_superop(u);
  const auto slow = qam::oracle::superop_elementwise(u, basis);
  const double fast_ms = best_ms(reps, [&] { qam::conj_superop(u); });
  const double slow_ms =
      best_ms(reps, [&] { qam::oracle::superop_elementwise(u, basis); });

  const double diff = qam::max_abs_diff(fast.matrix, slow);
  std::printf("superop   n=%d  N=%4zu   fast=%9.3f ms  elementwise=%9.3f ms  "
              "speedup=%7.1fx  max|diff|=%.2e\n",
              n, fast.dim(), fast_ms, slow_ms,
              fast_ms > 0 ? slow_ms / fast_ms : 0.0, diff);
}

void bench_partial_trace(int n, int n_keep, std::mt19937_64& rng) {
  const auto rho = qam::random_density(qam::qubit_dim(n), rng);

  const double fast_ms =
      best_ms(3, [&] { qam::partial_trace(rho, n, n_keep); });
  const double slow_ms =
      best_ms(3, [&] { qam::oracle::partial_trace_naive(rho, n, n_keep); });

  std::printf("trace-out n=%d->%d  fast=%9.3f ms  serial     =%9.3f ms  "
              "speedup=%7.1fx  max|diff|=%.2e\n",
              n, n_keep, fast_ms, slow_ms,
              fast_ms > 0 ? slow_ms / fast_ms : 0.0,
              qam::max_abs_diff(qam::partial_trace(rho, n, n_keep),
                                qam::oracle::partial_trace_naive(rho, n, n_keep)));
}

void bench_minimize(int n) {
  const auto m = qam::gen_instance(qam::InstanceKind::Product, n, 1, 7, 1);
  qam::MinimizationOptions opts;
  opts.try_sober_first = false;
  opts.verify_len = 0;
  const auto t0 = Clock::now();
  const auto report = qam::minimize(m, opts);
  const double wall =
      std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  std::printf("minimize  n=%d  wall=%9.3f ms  ops=%llu  result n=%d\n", n,
              wall, static_cast<unsigned long long>(report.total_ops()),
              report.n_bar);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif
  std::mt19937_64 rng(1234);
  for (int n = 1; n <= 4; ++n) bench_superop(n, rng);
  for (int keep : {2, 5, 8}) bench_partial_trace(10, keep, rng);
  for (int n = 2; n <= 4; ++n) bench_minimize(n);
  return 0;
}
