// Benchmark: serial vs OpenMP quadrature kernels on identical inputs.
//
// Times the three kernel families (grid evaluation, |.|^p, coefficient
// extraction) at several grid sizes and verifies that parallel output is
// bitwise identical to serial output, which is the determinism contract the
// library relies on.

#include <chrono>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "majorant/coefficient_sequence.hpp"
#include "majorant/quadrature.hpp"

using namespace majorant;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_of(const Clock::time_point& a, const Clock::time_point& b) {
  return std::chrono::duration<double>(b - a).count();
}

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    best = std::min(best, seconds_of(t0, t1));
  }
  return best;
}

bool bitwise_equal(const std::vector<std::complex<double>>& a,
                   const std::vector<std::complex<double>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].real() != b[i].real() || a[i].imag() != b[i].imag()) return false;
  return true;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; both columns run the serial kernel\n");
#endif

  // A 65-term polynomial with pseudorandom complex coefficients.
  std::mt19937_64 rng(12345);
  auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1p-53; };
  CoefficientSequence poly;
  for (int n = -32; n <= 32; ++n)
    poly.set(n, {2.0 * uniform() - 1.0, 2.0 * uniform() - 1.0});
  const DenseWindow window = dense_window(poly);

  std::vector<std::int64_t> freqs;
  for (int n = -32; n <= 32; ++n) freqs.push_back(n);

  std::printf("%-10s %-22s %12s %12s %9s  %s\n", "grid", "kernel", "serial(s)", "parallel(s)",
              "speedup", "bitwise");

  bool all_equal = true;
  for (std::size_t grid : {1u << 12, 1u << 15, 1u << 18, 1u << 21}) {
    const int reps = grid <= (1u << 15) ? 5 : 3;

    std::vector<std::complex<double>> vs(grid), vp(grid);
    const double t_eval_s = time_best_of(reps, [&] { kernels::eval_grid_serial(window, vs); });
    const double t_eval_p = time_best_of(reps, [&] { kernels::eval_grid_parallel(window, vp); });
    const bool eq_eval = bitwise_equal(vs, vp);
    std::printf("%-10zu %-22s %12.6f %12.6f %8.2fx  %s\n", grid, "eval_grid", t_eval_s, t_eval_p,
                t_eval_s / t_eval_p, eq_eval ? "yes" : "NO");

    std::vector<double> as(grid), ap(grid);
    const double t_abs_s =
        time_best_of(reps, [&] { kernels::abs_pow_serial(vs, 4.0 / 3.0, as); });
    const double t_abs_p =
        time_best_of(reps, [&] { kernels::abs_pow_parallel(vs, 4.0 / 3.0, ap); });
    const bool eq_abs = bitwise_equal(as, ap);
    std::printf("%-10zu %-22s %12.6f %12.6f %8.2fx  %s\n", grid, "abs_pow", t_abs_s, t_abs_p,
                t_abs_s / t_abs_p, eq_abs ? "yes" : "NO");

    std::vector<std::complex<double>> cs(freqs.size()), cp(freqs.size());
    const double t_cf_s =
        time_best_of(reps, [&] { kernels::coeffs_at_serial(vs, freqs, cs); });
    const double t_cf_p =
        time_best_of(reps, [&] { kernels::coeffs_at_parallel(vs, freqs, cp); });
    const bool eq_cf = bitwise_equal(cs, cp);
    std::printf("%-10zu %-22s %12.6f %12.6f %8.2fx  %s\n", grid, "coeffs_at", t_cf_s, t_cf_p,
                t_cf_s / t_cf_p, eq_cf ? "yes" : "NO");

    all_equal = all_equal && eq_eval && eq_abs && eq_cf;
  }

  std::printf("\nbitwise serial == parallel: %s\n", all_equal ? "yes" : "NO");
  return all_equal ? 0 : 1;
}
