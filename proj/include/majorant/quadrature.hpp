#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "majorant/coefficient_sequence.hpp"
#include "majorant/frequency_set.hpp"

namespace majorant {

// Uniform periodic equal-weight quadrature on the N-point grid
// θ_k = -π + (k+½)·2π/N, refined by grid doubling until two successive
// estimates agree to rel_tol.  The half-cell offset keeps nodes away from
// the angles (0, ±π/2, π) where the integrands' zeros typically sit; for
// periodic integrands the rule's spectral accuracy is phase-independent.
struct QuadratureConfig {
  std::size_t base_grid = 64;
  int max_refinements = 16;
  double rel_tol = 1e-9;

  void validate() const {
    if (base_grid < 2) throw std::invalid_argument("quadrature base_grid must be >= 2");
    if (max_refinements < 0) throw std::invalid_argument("max_refinements must be >= 0");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
  }
};

struct QuadResult {
  double value = 0.0;
  bool converged = false;
  std::size_t grid = 0;    // finest grid used
  int refinements = 0;     // doublings performed
};

// Coefficients packed densely over the contiguous window
// [n_min, n_min + coeff.size()).
struct DenseWindow {
  std::int64_t n_min = 0;
  std::vector<std::complex<double>> coeff;
};

DenseWindow dense_window(const CoefficientSequence& a);

namespace kernels {

// Grid size at and above which the dispatching wrappers go parallel.
inline constexpr std::size_t kParallelThreshold = 4096;

// Node angles of the N-point quadrature grid: θ_k = -π + (k+½)·2π/N.  See
// the QuadratureConfig comment for why the nodes sit half a cell off the
// endpoints.  Every kernel below evaluates or integrates on exactly these
// nodes; code that needs per-node angles (e.g. curvature assembly in the
// solvers) must use this function rather than its own grid formula.
inline double grid_theta(std::size_t k, std::size_t n) {
  constexpr double kPi = 3.141592653589793238462643383279502884;
  return -kPi + (kPi * (2.0 * static_cast<double>(k) + 1.0)) / static_cast<double>(n);
}

// values[k] = polynomial evaluated at θ_k, k = 0..values.size()-1.
// The parallel variant computes bitwise-identical output for any thread
// count: every point is independent and no reduction is involved.
void eval_grid_serial(const DenseWindow& w, std::vector<std::complex<double>>& values);
void eval_grid_parallel(const DenseWindow& w, std::vector<std::complex<double>>& values);
void eval_grid(const DenseWindow& w, std::vector<std::complex<double>>& values);

// out[k] = |values[k]|^p, elementwise.
void abs_pow_serial(const std::vector<std::complex<double>>& values, double p,
                    std::vector<double>& out);
void abs_pow_parallel(const std::vector<std::complex<double>>& values, double p,
                      std::vector<double>& out);
void abs_pow(const std::vector<std::complex<double>>& values, double p, std::vector<double>& out);

// out[i] = (1/N) Σ_k values[k] e^{-i freqs[i] θ_k}: trapezoid Fourier
// coefficients of the sampled function. Each frequency's accumulation is a
// self-contained serial Kahan loop, so the parallel variant (over
// frequencies) is bitwise identical to the serial one.
void coeffs_at_serial(const std::vector<std::complex<double>>& values,
                      const std::vector<std::int64_t>& freqs,
                      std::vector<std::complex<double>>& out);
void coeffs_at_parallel(const std::vector<std::complex<double>>& values,
                        const std::vector<std::int64_t>& freqs,
                        std::vector<std::complex<double>>& out);
void coeffs_at(const std::vector<std::complex<double>>& values,
               const std::vector<std::int64_t>& freqs, std::vector<std::complex<double>>& out);

// Kahan-compensated (1/N) Σ terms, serial by design (it is the reduction step
// shared by both kernel families).
double kahan_mean(const std::vector<double>& terms);

}  // namespace kernels

// Smallest grid actually used for F under cfg: max(cfg.base_grid, 4·span+4),
// span = max frequency - min frequency of F.
std::size_t effective_base_grid(const QuadratureConfig& cfg, const CoefficientSequence& F);

// (1/2π) ∫ |F(θ)|^p dθ on a fixed N-point grid. This is the exact value of
// the discretized functional, exposed so gradient checks can differentiate
// the same object the solvers minimize.
double mean_abs_pow_fixed(const CoefficientSequence& F, double p, std::size_t grid);

// Adaptive version of the above. Requires p > 0.
QuadResult mean_abs_pow(const CoefficientSequence& F, double p, const QuadratureConfig& cfg = {});

// ||F||_p = mean_abs_pow(F, p)^(1/p). Requires p >= 1. For even integer
// p = 2j this agrees with norm_even to within rel_tol; grids exceeding the
// power product's span make the trapezoid rule exact there.
QuadResult norm_p(const CoefficientSequence& F, double p, const QuadratureConfig& cfg = {});

struct WindowCoeffs {
  CoefficientSequence coeffs;
  bool converged = false;
  std::size_t grid = 0;
  int refinements = 0;
};

// Fourier coefficients, restricted to `window`, of |F|^(p-1) sgn(F) — the
// normalized dual function of F (sgn vanishes where F does). Requires
// p > 1. Fixed-grid variant computes at exactly `grid` points; the adaptive
// variant doubles until the coefficient vector is sup-norm stable.
WindowCoeffs dual_function_coeffs_fixed(const CoefficientSequence& F, double p,
                                        const FrequencySet& window, std::size_t grid);
WindowCoeffs dual_function_coeffs(const CoefficientSequence& F, double p,
                                  const FrequencySet& window,
                                  const QuadratureConfig& cfg = {});

}  // namespace majorant
