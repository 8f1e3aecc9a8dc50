#include "majorant/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace majorant {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void validate(const QuadratureConfig& cfg) {
  if (cfg.base_grid < 2) throw std::invalid_argument("quadrature base_grid must be >= 2");
  if (cfg.max_refinements < 0) throw std::invalid_argument("quadrature max_refinements must be >= 0");
  if (!(cfg.rel_tol > 0.0)) throw std::invalid_argument("quadrature rel_tol must be > 0");
}

}  // namespace

DenseWindow dense_window(const CoefficientSequence& a) {
  DenseWindow w;
  if (a.empty()) return w;
  w.n_min = a.min_frequency();
  const auto span = static_cast<std::size_t>(a.max_frequency() - w.n_min);
  w.coeff.assign(span + 1, {0.0, 0.0});
  for (const auto& [n, v] : a.entries()) w.coeff[static_cast<std::size_t>(n - w.n_min)] = v;
  return w;
}

namespace kernels {

namespace {

// --- Double-double helpers (Dekker/Knuth error-free transforms) -------------
//
// Near a zero of F the Horner sum cancels almost completely, so the plain
// double result is dominated by rounding (~1e-16 * coefficient scale). That
// matters downstream: gradients integrate |F|^{p-2}-weighted quantities, and
// a rounding-sized |F| raised to a fractional power injects noise that decays
// only like 1/N. Re-evaluating the few near-zero points in double-double
// keeps |F| faithful at any magnitude and removes that noise floor.

struct DD {
  double hi = 0.0, lo = 0.0;
};

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
  // Dekker splitting; avoids relying on a fast fma.
  constexpr double kSplit = 134217729.0;  // 2^27 + 1
  const double p = a * b;
  const double ca = kSplit * a;
  const double ahi = ca - (ca - a), alo = a - ahi;
  const double cb = kSplit * b;
  const double bhi = cb - (cb - b), blo = b - bhi;
  const double err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo;
  return {p, err};
}

inline DD dd_add(DD a, double b) {
  DD s = two_sum(a.hi, b);
  s.lo += a.lo;
  const double hi = s.hi + s.lo;
  return {hi, s.lo - (hi - s.hi)};
}

inline DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  const double hi = s.hi + s.lo;
  return {hi, s.lo - (hi - s.hi)};
}

inline DD dd_mul(DD a, double b) {
  DD p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  const double hi = p.hi + p.lo;
  return {hi, p.lo - (hi - p.hi)};
}

struct DDComplex {
  DD re, im;
};

// acc = acc * z + c, with z and c plain complex doubles.
inline DDComplex dd_horner_step(const DDComplex& acc, std::complex<double> z,
                                std::complex<double> c) {
  const DD rr = dd_mul(acc.re, z.real());
  const DD ii = dd_mul(acc.im, z.imag());
  const DD ri = dd_mul(acc.re, z.imag());
  const DD ir = dd_mul(acc.im, z.real());
  DDComplex out;
  out.re = dd_add(dd_add(rr, dd_mul(ii, -1.0)), c.real());
  out.im = dd_add(dd_add(ri, ir), c.imag());
  return out;
}

// z^e for |z| ~ 1 by binary exponentiation (e may be negative).
inline std::complex<double> unit_pow(std::complex<double> z, std::int64_t e) {
  if (e < 0) {
    z = std::conj(z);
    e = -e;
  }
  std::complex<double> r{1.0, 0.0};
  while (e > 0) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

inline std::complex<double> eval_point(const DenseWindow& w, std::size_t k, std::size_t n) {
  const double theta = grid_theta(k, n);
  const std::complex<double> z = std::polar(1.0, theta);
  std::complex<double> acc = w.coeff.back();
  for (std::size_t i = w.coeff.size() - 1; i-- > 0;) acc = acc * z + w.coeff[i];
  return acc * unit_pow(z, w.n_min);
}

inline std::complex<double> eval_point_rescued(const DenseWindow& w, std::size_t k,
                                               std::size_t n) {
  const double theta = grid_theta(k, n);
  const std::complex<double> z = std::polar(1.0, theta);
  DDComplex acc{{w.coeff.back().real(), 0.0}, {w.coeff.back().imag(), 0.0}};
  for (std::size_t i = w.coeff.size() - 1; i-- > 0;)
    acc = dd_horner_step(acc, z, w.coeff[i]);
  const std::complex<double> phase = unit_pow(z, w.n_min);
  // |phase| = 1, so applying it in plain arithmetic preserves |F| faithfully.
  return std::complex<double>{acc.re.hi, acc.im.hi} * phase;
}

// Sum of |coefficients|: an upper bound for |F| used to flag near-total
// cancellation. Points below kRescue * that bound are re-evaluated.
constexpr double kRescue = 1e-8;

inline double rescue_threshold(const DenseWindow& w) {
  double l1 = 0.0;
  for (const auto& c : w.coeff) l1 += std::abs(c);
  return kRescue * l1;
}

inline std::complex<double> eval_point_accurate(const DenseWindow& w, std::size_t k,
                                                std::size_t n, double threshold) {
  const std::complex<double> v = eval_point(w, k, n);
  if (std::abs(v) >= threshold) return v;
  return eval_point_rescued(w, k, n);
}

// Phase factors e^{-i f θ_k} are advanced multiplicatively and re-seeded from
// polar() every kPhaseReseed steps to keep drift at the 1e-13 level on
// million-point grids.
constexpr std::size_t kPhaseReseed = 1024;

inline std::complex<double> coeff_at_one(const std::vector<std::complex<double>>& values,
                                         std::int64_t f) {
  const std::size_t n = values.size();
  const double f_d = static_cast<double>(f);
  const std::complex<double> step = std::polar(1.0, -2.0 * kPi * f_d / static_cast<double>(n));
  const double sign = (f % 2 != 0) ? -1.0 : 1.0;  // e^{-i f (-π)} = (-1)^f
  const auto seed = [&](std::size_t k) {
    return sign * std::polar(1.0, -kPi * f_d * (2.0 * static_cast<double>(k) + 1.0) /
                                      static_cast<double>(n));
  };
  std::complex<double> u = seed(0);
  double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;  // Kahan, re/im channels
  for (std::size_t k = 0; k < n; ++k) {
    if (k % kPhaseReseed == 0 && k != 0) u = seed(k);
    const std::complex<double> term = values[k] * u;
    {
      const double t = sr + term.real();
      cr += std::abs(sr) >= std::abs(term.real()) ? (sr - t) + term.real() : (term.real() - t) + sr;
      sr = t;
    }
    {
      const double t = si + term.imag();
      ci += std::abs(si) >= std::abs(term.imag()) ? (si - t) + term.imag() : (term.imag() - t) + si;
      si = t;
    }
    u *= step;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  return {(sr + cr) * inv_n, (si + ci) * inv_n};
}

}  // namespace

void eval_grid_serial(const DenseWindow& w, std::vector<std::complex<double>>& values) {
  const std::size_t n = values.size();
  if (w.coeff.empty()) {
    values.assign(n, {0.0, 0.0});
    return;
  }
  const double thr = rescue_threshold(w);
  for (std::size_t k = 0; k < n; ++k) values[k] = eval_point_accurate(w, k, n, thr);
}

void eval_grid_parallel(const DenseWindow& w, std::vector<std::complex<double>>& values) {
  const std::size_t n = values.size();
  if (w.coeff.empty()) {
    values.assign(n, {0.0, 0.0});
    return;
  }
  const double thr = rescue_threshold(w);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::size_t k = 0; k < n; ++k) values[k] = eval_point_accurate(w, k, n, thr);
}

void eval_grid(const DenseWindow& w, std::vector<std::complex<double>>& values) {
  if (values.size() >= kParallelThreshold)
    eval_grid_parallel(w, values);
  else
    eval_grid_serial(w, values);
}

void abs_pow_serial(const std::vector<std::complex<double>>& values, double p,
                    std::vector<double>& out) {
  out.resize(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) out[k] = std::pow(std::abs(values[k]), p);
}

void abs_pow_parallel(const std::vector<std::complex<double>>& values, double p,
                      std::vector<double>& out) {
  out.resize(values.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::size_t k = 0; k < values.size(); ++k) out[k] = std::pow(std::abs(values[k]), p);
}

void abs_pow(const std::vector<std::complex<double>>& values, double p, std::vector<double>& out) {
  if (values.size() >= kParallelThreshold)
    abs_pow_parallel(values, p, out);
  else
    abs_pow_serial(values, p, out);
}

void coeffs_at_serial(const std::vector<std::complex<double>>& values,
                      const std::vector<std::int64_t>& freqs,
                      std::vector<std::complex<double>>& out) {
  out.resize(freqs.size());
  for (std::size_t i = 0; i < freqs.size(); ++i) out[i] = coeff_at_one(values, freqs[i]);
}

void coeffs_at_parallel(const std::vector<std::complex<double>>& values,
                        const std::vector<std::int64_t>& freqs,
                        std::vector<std::complex<double>>& out) {
  out.resize(freqs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::size_t i = 0; i < freqs.size(); ++i) out[i] = coeff_at_one(values, freqs[i]);
}

void coeffs_at(const std::vector<std::complex<double>>& values,
               const std::vector<std::int64_t>& freqs, std::vector<std::complex<double>>& out) {
  if (values.size() >= kParallelThreshold && freqs.size() > 1)
    coeffs_at_parallel(values, freqs, out);
  else
    coeffs_at_serial(values, freqs, out);
}

double kahan_mean(const std::vector<double>& terms) {
  double sum = 0.0, comp = 0.0;
  for (double term : terms) {
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return (sum + comp) / static_cast<double>(terms.size());
}

}  // namespace kernels

std::size_t effective_base_grid(const QuadratureConfig& cfg, const CoefficientSequence& F) {
  std::size_t base = cfg.base_grid;
  if (!F.empty()) {
    const auto span = static_cast<std::size_t>(F.max_frequency() - F.min_frequency());
    base = std::max(base, 4 * span + 4);
  }
  return base;
}

double mean_abs_pow_fixed(const CoefficientSequence& F, double p, std::size_t grid) {
  if (!(p > 0.0)) throw std::invalid_argument("mean_abs_pow requires p > 0");
  if (grid < 2) throw std::invalid_argument("grid must be >= 2");
  if (F.empty()) return 0.0;
  const DenseWindow w = dense_window(F);
  std::vector<std::complex<double>> values(grid);
  kernels::eval_grid(w, values);
  std::vector<double> powed;
  kernels::abs_pow(values, p, powed);
  return kernels::kahan_mean(powed);
}

QuadResult mean_abs_pow(const CoefficientSequence& F, double p, const QuadratureConfig& cfg) {
  validate(cfg);
  if (!(p > 0.0)) throw std::invalid_argument("mean_abs_pow requires p > 0");
  if (F.empty()) return {0.0, true, cfg.base_grid, 0};

  std::size_t n = effective_base_grid(cfg, F);
  double prev = mean_abs_pow_fixed(F, p, n);
  for (int r = 1; r <= cfg.max_refinements; ++r) {
    n *= 2;
    const double cur = mean_abs_pow_fixed(F, p, n);
    if (std::abs(cur - prev) <= cfg.rel_tol * std::max(std::abs(cur), 1e-300))
      return {cur, true, n, r};
    prev = cur;
  }
  return {prev, false, n, cfg.max_refinements};
}

QuadResult norm_p(const CoefficientSequence& F, double p, const QuadratureConfig& cfg) {
  if (!(p >= 1.0)) throw std::invalid_argument("norm_p requires p >= 1");
  QuadResult r = mean_abs_pow(F, p, cfg);
  r.value = std::pow(r.value, 1.0 / p);
  return r;
}

namespace {

void dual_values(const std::vector<std::complex<double>>& in, double p,
                 std::vector<std::complex<double>>& out) {
  out.resize(in.size());
  const double q = p - 1.0;
  const std::size_t n = in.size();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= kernels::kParallelThreshold)
#endif
  for (std::size_t k = 0; k < n; ++k) {
    const double a = std::abs(in[k]);
    out[k] = a > 0.0 ? std::pow(a, q) * (in[k] / a) : std::complex<double>{0.0, 0.0};
  }
}

std::vector<std::complex<double>> dual_coeff_vector(const DenseWindow& w, double p,
                                                    const std::vector<std::int64_t>& freqs,
                                                    std::size_t grid) {
  std::vector<std::complex<double>> values(grid);
  kernels::eval_grid(w, values);
  std::vector<std::complex<double>> g;
  dual_values(values, p, g);
  std::vector<std::complex<double>> out;
  kernels::coeffs_at(g, freqs, out);
  return out;
}

}  // namespace

WindowCoeffs dual_function_coeffs_fixed(const CoefficientSequence& F, double p,
                                        const FrequencySet& window, std::size_t grid) {
  if (!(p > 1.0)) throw std::invalid_argument("dual_function_coeffs requires p > 1");
  if (grid < 2) throw std::invalid_argument("grid must be >= 2");
  WindowCoeffs out;
  out.grid = grid;
  out.converged = true;
  if (F.empty() || window.empty()) return out;
  const DenseWindow w = dense_window(F);
  const auto vec = dual_coeff_vector(w, p, window.elements(), grid);
  CoefficientSequence seq;
  for (std::size_t i = 0; i < vec.size(); ++i) seq.set(window.elements()[i], vec[i]);
  out.coeffs = std::move(seq);
  return out;
}

WindowCoeffs dual_function_coeffs(const CoefficientSequence& F, double p,
                                  const FrequencySet& window, const QuadratureConfig& cfg) {
  validate(cfg);
  if (!(p > 1.0)) throw std::invalid_argument("dual_function_coeffs requires p > 1");
  WindowCoeffs out;
  if (F.empty() || window.empty()) {
    out.converged = true;
    out.grid = cfg.base_grid;
    return out;
  }
  std::size_t n = effective_base_grid(cfg, F);
  const auto wspan = static_cast<std::size_t>(window.max() - window.min());
  n = std::max(n, 2 * wspan + 4);

  const DenseWindow w = dense_window(F);
  const auto& freqs = window.elements();
  std::vector<std::complex<double>> prev = dual_coeff_vector(w, p, freqs, n);
  for (int r = 1; r <= cfg.max_refinements; ++r) {
    n *= 2;
    const auto cur = dual_coeff_vector(w, p, freqs, n);
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      diff = std::max(diff, std::abs(cur[i] - prev[i]));
      scale = std::max(scale, std::abs(cur[i]));
    }
    if (diff <= cfg.rel_tol * std::max(scale, 1e-300)) {
      CoefficientSequence seq;
      for (std::size_t i = 0; i < cur.size(); ++i) seq.set(freqs[i], cur[i]);
      return {std::move(seq), true, n, r};
    }
    prev = cur;
  }
  CoefficientSequence seq;
  for (std::size_t i = 0; i < prev.size(); ++i) seq.set(freqs[i], prev[i]);
  return {std::move(seq), false, n, cfg.max_refinements};
}

}  // namespace majorant
