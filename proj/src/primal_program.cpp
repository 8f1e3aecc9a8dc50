#include "majorant/primal_program.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "majorant/errors.hpp"
#include "majorant/line_search.hpp"
#include "majorant/exponent.hpp"
#include "majorant/sumset_sidon.hpp"

namespace majorant {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

CoefficientSequence to_sequence(const std::vector<std::int64_t>& freqs,
                                const std::vector<double>& y) {
  CoefficientSequence s;
  for (std::size_t i = 0; i < freqs.size(); ++i) s.set(freqs[i], y[i]);
  return s;
}

struct Discretized {
  const std::vector<std::int64_t>* freqs = nullptr;
  const FrequencySet* window = nullptr;
  double p = 0.0;
  std::size_t grid = 0;

  double value(const std::vector<double>& y) const {
    return mean_abs_pow_fixed(to_sequence(*freqs, y), p, grid);
  }
  std::vector<double> grad(const std::vector<double>& y) const {
    const WindowCoeffs wc = dual_function_coeffs_fixed(to_sequence(*freqs, y), p, *window, grid);
    std::vector<double> g(freqs->size());
    for (std::size_t i = 0; i < freqs->size(); ++i)
      g[i] = p * wc.coeffs.at((*freqs)[i]).real();
    return g;
  }
  void values(const std::vector<double>& y, std::vector<std::complex<double>>& out) const {
    out.assign(grid, {0.0, 0.0});
    kernels::eval_grid(dense_window(to_sequence(*freqs, y)), out);
  }
};

double stationarity_residual(const std::vector<double>& g, const std::vector<double>& y,
                             const std::vector<double>& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    r = std::max(r, std::abs(std::min(g[i], y[i] - b[i])));
  return r;
}

// In-place lower Cholesky of the dense symmetric matrix a (row-major n×n).
// Returns false when a pivot is nonpositive or nonfinite.
bool cholesky(std::vector<double>& a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k <= i; ++k) {
      double s = a[i * n + k];
      for (std::size_t t = 0; t < k; ++t) s -= a[i * n + t] * a[k * n + t];
      if (i == k) {
        if (!(s > 0.0) || !std::isfinite(s)) return false;
        a[i * n + i] = std::sqrt(s);
      } else {
        a[i * n + k] = s / a[k * n + k];
      }
    }
  }
  return true;
}

// Newton direction on the free coordinates.  The discretized objective
// ψ(y) = (1/N) Σ_k |W_k|^p has the exact Hessian
//   H_ij = (p/N) Σ_k |W_k|^{p-2} [ (p-2) ĉ_i ĉ_j + cos((n_i - n_j) θ_k) ],
// with ĉ_i = Re(conj(W_k) e^{i n_i θ_k}) / |W_k| ∈ [-1, 1], which is positive
// semidefinite because ψ is convex.  The conjugate-gradient polish crawls
// when this matrix is ill conditioned (curvature concentrates at nodes where
// |F| nearly vanishes, and its spread grows as the zero sharpens), while one
// factored solve of the m_free × m_free system jumps to the valley floor.
// Cost is m_free²·N per assembly, so the caller gates on that product.
// Returns false when the factorization fails even with a ridge, leaving the
// caller on its gradient path.
bool newton_direction(const Discretized& d, const std::vector<std::complex<double>>& fv,
                      const std::vector<double>& g, const std::vector<std::size_t>& free_ix,
                      std::vector<double>& dir) {
  const std::size_t mf = free_ix.size();
  const std::size_t n = fv.size();
  const double pm2 = d.p - 2.0;
  std::vector<double> h(mf * mf, 0.0);
  std::vector<double> c(mf), s(mf), ch(mf);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = std::abs(fv[k]);
    // Nodes this deep inside a zero would overflow |W|^{p-2}; their weight in
    // the objective is below 1e-300 and dropping them keeps H finite and PSD.
    if (a < 1e-250) continue;
    const double theta = kernels::grid_theta(k, n);
    const double q = std::pow(a, pm2);
    for (std::size_t ii = 0; ii < mf; ++ii) {
      const double arg = static_cast<double>((*d.freqs)[free_ix[ii]]) * theta;
      c[ii] = std::cos(arg);
      s[ii] = std::sin(arg);
      ch[ii] = (fv[k].real() * c[ii] + fv[k].imag() * s[ii]) / a;
    }
    for (std::size_t ii = 0; ii < mf; ++ii)
      for (std::size_t jj = 0; jj <= ii; ++jj)
        h[ii * mf + jj] +=
            q * (pm2 * ch[ii] * ch[jj] + c[ii] * c[jj] + s[ii] * s[jj]);
  }
  double trace = 0.0;
  for (std::size_t ii = 0; ii < mf; ++ii) {
    for (std::size_t jj = ii + 1; jj < mf; ++jj) h[ii * mf + jj] = h[jj * mf + ii];
    trace += h[ii * mf + ii];
  }
  const double scale = d.p / static_cast<double>(n);
  for (auto& v : h) v *= scale;
  trace *= scale;

  // Ridge ladder: the matrix is PSD in exact arithmetic, so a tiny multiple
  // of the identity fixes any rounding-level indefiniteness.
  std::vector<double> fac;
  double ridge = 0.0;
  for (int attempt = 0; attempt < 6; ++attempt) {
    fac = h;
    if (ridge > 0.0)
      for (std::size_t ii = 0; ii < mf; ++ii) fac[ii * mf + ii] += ridge;
    if (cholesky(fac, mf)) break;
    fac.clear();
    ridge = ridge == 0.0 ? 1e-14 * (trace / static_cast<double>(mf) + 1e-300) : 100.0 * ridge;
  }
  if (fac.empty()) return false;

  std::vector<double> rhs(mf);
  for (std::size_t ii = 0; ii < mf; ++ii) rhs[ii] = -g[free_ix[ii]];
  for (std::size_t ii = 0; ii < mf; ++ii) {  // forward substitution
    double v = rhs[ii];
    for (std::size_t jj = 0; jj < ii; ++jj) v -= fac[ii * mf + jj] * rhs[jj];
    rhs[ii] = v / fac[ii * mf + ii];
  }
  for (std::size_t ii = mf; ii-- > 0;) {  // back substitution
    double v = rhs[ii];
    for (std::size_t jj = ii + 1; jj < mf; ++jj) v -= fac[jj * mf + ii] * rhs[jj];
    rhs[ii] = v / fac[ii * mf + ii];
  }
  for (std::size_t ii = 0; ii < mf; ++ii) {
    if (!std::isfinite(rhs[ii])) return false;
    dir[free_ix[ii]] = rhs[ii];
  }
  return true;
}

// Projected-gradient descent on one fixed grid. Returns the final residual;
// `iters` accumulates accepted iterations against cfg.max_iters. The Armijo
// phase is additionally capped per level: its progress flattens near the
// optimum, where the polish phase below is far more effective, so unbounded
// Armijo grinding would only exhaust the shared iteration budget.
double minimize_on_grid(const Discretized& d, std::vector<double>& y,
                        const std::vector<double>& b, const SolverConfig& cfg, int& iters,
                        bool& hit_tol, bool warm_start, int polish_cap) {
  // The Armijo phase only needs to carry the iterate into the right basin;
  // the polish phase below (exact line searches, Newton or conjugate
  // directions) converges globally on this convex objective and is far
  // cheaper per unit progress, so Armijo gets a short leash.
  const int armijo_cap = warm_start ? 50 : 100;
  const std::size_t m = y.size();
  double psi = d.value(y);
  std::vector<double> g = d.grad(y);
  double residual = stationarity_residual(g, y, b);
  hit_tol = residual <= cfg.tol_gap;

  double g_max = 0.0;
  for (double v : g) g_max = std::max(g_max, std::abs(v));
  double step = 1.0 / (1.0 + g_max);

  int level_iters = 0;
  while (!hit_tol && iters < cfg.max_iters && level_iters < armijo_cap) {
    std::vector<double> cand(m);
    double psi_cand = 0.0;
    bool accepted = false;

    if (cfg.step_rule == SolverConfig::StepRule::fixed) {
      for (std::size_t i = 0; i < m; ++i) cand[i] = std::max(b[i], y[i] - cfg.fixed_step * g[i]);
      psi_cand = d.value(cand);
      accepted = true;
    } else {
      for (int bt = 0; bt < kMaxBacktracks; ++bt) {
        for (std::size_t i = 0; i < m; ++i) cand[i] = std::max(b[i], y[i] - step * g[i]);
        double descent = 0.0;
        for (std::size_t i = 0; i < m; ++i) descent += g[i] * (cand[i] - y[i]);
        psi_cand = d.value(cand);
        if (psi_cand <= psi + kArmijo * descent + 1e-16 * std::abs(psi)) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
    }
    if (!accepted) break;

    y = std::move(cand);
    psi = psi_cand;
    g = d.grad(y);
    residual = stationarity_residual(g, y, b);
    hit_tol = residual <= cfg.tol_gap;
    ++iters;
    ++level_iters;
    if (cfg.step_rule == SolverConfig::StepRule::backtracking) step *= 1.3;
  }

  // Polish phase: once objective differences fall below rounding the Armijo
  // test cannot certify progress, but directional derivatives along a fixed
  // ray remain accurate far deeper, so exact line searches still work. Plain
  // projected gradient zigzags badly here -- the Hessian degenerates where
  // |F| nearly vanishes on the circle -- so the direction is Polak-Ribiere
  // conjugate gradient restricted to the free coordinates, restarted whenever
  // the active set changes. psi is convex, so the derivative along a descent
  // ray is nondecreasing and the exact step is its sign change. Budgeted
  // against cfg.max_iters like every other iteration.
  std::vector<double> g_prev, dir_prev;
  std::vector<char> act_prev;
  bool have_prev = false;
  double s_prev = 1.0;
  int stalled = 0;
  // Exact line searches keep the objective monotone but not the residual,
  // which can spike while conjugate directions rebuild after a restart; the
  // iterate reported for this grid is the best-certified one seen.
  std::vector<double> y_best = y;
  double best_res = residual;
  double window_res = residual;
  int since_best = 0;
  std::vector<std::complex<double>> fv, dv;  // scratch: F and direction on the grid
  std::vector<double> terms;
  for (int polish = 0; !hit_tol && polish < polish_cap && iters < cfg.max_iters; ++polish) {
    // A coordinate pinned at a finite bound with the gradient pushing further
    // in stays fixed this iteration. Tiny positive slacks under such pressure
    // are absorbed into the bound so they cannot throttle the step length.
    std::vector<char> act(m, 0);
    bool absorbed = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (std::isfinite(b[i]) && g[i] > 0.0 &&
          y[i] - b[i] <= 1e-9 * (1.0 + std::abs(b[i]))) {
        if (y[i] != b[i]) {
          y[i] = b[i];
          absorbed = true;
        }
        act[i] = 1;
      }
    }
    if (absorbed) g = d.grad(y);

    std::vector<std::size_t> free_ix;
    for (std::size_t i = 0; i < m; ++i)
      if (!act[i]) free_ix.push_back(i);

    d.values(y, fv);  // used by the curvature assembly and the line search

    // Direction: a factored Newton solve on the free coordinates when the
    // assembly cost m_free²·N is affordable, else Polak-Ribiere conjugate
    // gradient. Newton turns the endgame from thousands of zigzag steps into
    // a handful, which matters because the free-space Hessian's conditioning
    // deteriorates as the optimal F's zeros sharpen.
    std::vector<double> dir(m, 0.0);
    const double mf = static_cast<double>(free_ix.size());
    const bool newton = !free_ix.empty() && mf * mf * static_cast<double>(d.grid) <= 2e8 &&
                        newton_direction(d, fv, g, free_ix, dir);
    if (!newton) {
      for (std::size_t i = 0; i < m; ++i) dir[i] = act[i] ? 0.0 : -g[i];
      if (have_prev && act == act_prev) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          if (act[i]) continue;
          num += g[i] * (g[i] - g_prev[i]);
          den += g_prev[i] * g_prev[i];
        }
        const double beta = den > 0.0 ? std::max(0.0, num / den) : 0.0;
        for (std::size_t i = 0; i < m; ++i)
          if (!act[i]) dir[i] += beta * dir_prev[i];
      }
    }
    // Project the ray onto the feasible cone: conjugate history or a Newton
    // solve may point a zero-slack coordinate below its bound.
    for (std::size_t i = 0; i < m; ++i)
      if (dir[i] < 0.0 && std::isfinite(b[i]) && y[i] <= b[i]) dir[i] = 0.0;

    double slope = 0.0;
    for (std::size_t i = 0; i < m; ++i) slope += g[i] * dir[i];
    if (slope >= 0.0) {
      // The ray turned uphill (stale conjugacy, or the cone projection gutted
      // a Newton direction); restart from steepest descent.
      for (std::size_t i = 0; i < m; ++i) dir[i] = act[i] ? 0.0 : -g[i];
      slope = 0.0;
      for (std::size_t i = 0; i < m; ++i) slope += g[i] * dir[i];
      if (slope >= 0.0) break;  // stationary on the free set to rounding
    }

    double s_max = 1e12;
    for (std::size_t i = 0; i < m; ++i)
      if (dir[i] < 0.0 && std::isfinite(b[i]))
        s_max = std::min(s_max, (b[i] - y[i]) / dir[i]);

    // The derivative along this fixed ray, phi'(s) = <grad(y + s dir), dir>,
    // equals p * mean over the grid of |W|^{p-2} Re(conj(W) D) with
    // W = F + sD (discrete Parseval, exact on the grid), so each evaluation
    // is a pointwise pass over precomputed F and D values instead of a full
    // gradient. The |W|^{p-1} * (.../|W|) form avoids overflowing the
    // negative-power factor when |W| is denormal.
    d.values(dir, dv);
    const double pm1 = d.p - 1.0;
    auto slope_at = [&](double s) {
      terms.resize(fv.size());
      for (std::size_t k = 0; k < fv.size(); ++k) {
        const std::complex<double> wv = fv[k] + s * dv[k];
        const double a = std::abs(wv);
        terms[k] = a > 0.0
                       ? std::pow(a, pm1) *
                             ((wv.real() * dv[k].real() + wv.imag() * dv[k].imag()) / a)
                       : 0.0;
      }
      return d.p * kernels::kahan_mean(terms);
    };
    const double slope0 = slope_at(0.0);
    if (slope0 >= 0.0) {
      // <g, dir> and the ray formula disagree only at rounding level; treat
      // as stationary along this ray.
      if (++stalled >= 8) break;
      continue;
    }
    // Newton's natural step is 1; conjugate-gradient steps are guessed from
    // the previous accepted step.
    const double s_star = find_slope_root(slope_at, slope0, s_max,
                                          std::min(newton ? 1.0 : s_prev, s_max));

    double moved = 0.0;
    double y_scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      double next = y[i] + s_star * dir[i];
      if (std::isfinite(b[i])) next = std::max(next, b[i]);
      moved = std::max(moved, std::abs(next - y[i]));
      y[i] = next;
      y_scale = std::max(y_scale, std::abs(y[i]));
    }
    // A single rounding-level move can be a conjugate-gradient restart step
    // whose successor travels along the valley floor, so only a run of them
    // counts as a stall.
    if (moved <= 1e-15 * y_scale) {
      if (++stalled >= 8) break;
    } else {
      stalled = 0;
    }
    if (s_star > 0.0) s_prev = s_star;

    g_prev = std::move(g);
    dir_prev = std::move(dir);
    act_prev = std::move(act);
    have_prev = !newton;  // conjugate history must not span a Newton step
    g = d.grad(y);
    residual = stationarity_residual(g, y, b);
    hit_tol = residual <= cfg.tol_gap;
    ++iters;
    if (residual < best_res) {
      best_res = residual;
      y_best = y;
    }
    // Residuals bouncing around a noise floor with no real headway mean this
    // grid cannot certify the tolerance; stop and let a refinement try.
    if (residual < 0.999 * window_res) {
      window_res = residual;
      since_best = 0;
    } else if (++since_best > 60) {
      break;
    }
  }
  if (best_res < residual) {
    y = std::move(y_best);
    residual = best_res;
    hit_tol = residual <= cfg.tol_gap;
  }
  return residual;
}

}  // namespace

PrimalSolution solve_primal(const CoefficientSequence& f, int j, MajorantMode mode,
                            const SolverConfig& cfg, const QuadratureConfig& quad) {
  if (j < 2) throw std::invalid_argument("solve_primal requires j >= 2");
  if (f.empty()) throw EmptyInputError("primal program needs a nonzero input polynomial");
  if (!(cfg.tol_gap > 0.0) || !(cfg.tol_feas > 0.0))
    throw std::invalid_argument("solver tolerances must be > 0");

  const double p = special_exponent(j);
  const FrequencySet s = f.support();
  const FrequencySet window = majorant_window(s, j);
  const std::vector<std::int64_t>& freqs = window.elements();
  const std::size_t m = freqs.size();

  std::vector<double> b(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (s.contains(freqs[i]))
      b[i] = std::abs(f.at(freqs[i]));
    else
      b[i] = mode == MajorantMode::full ? 0.0 : -std::numeric_limits<double>::infinity();
  }

  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = std::max(b[i], 0.0);
  if (cfg.seed != 0) {
    std::mt19937_64 rng(cfg.seed);
    for (auto& v : y) v += uniform01(rng) * 0.5;
  }

  const auto wspan = static_cast<std::size_t>(window.max() - window.min());
  std::size_t grid = std::max(quad.base_grid, 4 * wspan + 4);
  const double outer_tol = std::max(quad.rel_tol, 1e-8);

  Discretized d{&freqs, &window, p, grid};
  int iters = 0;
  bool hit_tol = false;
  double residual = minimize_on_grid(d, y, b, cfg, iters, hit_tol, false, 400);

  // Rounding noise near zeros of F puts a floor under the measurable
  // stationarity residual that scales like 1/N; model it from the levels that
  // stall so clearly-hopeless grids get only a cheap warm-up pass.
  double floor_model = !hit_tol && residual > cfg.tol_gap ? residual * double(grid) : 0.0;

  // Refine until the iterate is both stationary on its grid and stable under
  // grid doubling. Refinement helps non-convergence too, not just aliasing:
  // where |F| nearly vanishes the integrand magnifies rounding into a
  // stationarity-residual noise floor that scales like 1/N, so a tolerance
  // unreachable on a coarse grid can be certified on a finer one.
  bool grid_stable = false;
  int level = 0;
  for (; level < quad.max_refinements && iters < cfg.max_iters; ++level) {
    std::vector<double> prev = y;
    // When the residual sits far above tolerance the binding limit is usually
    // that noise floor, so jump straight to the grid size expected to certify
    // the tolerance rather than paying for every intermediate doubling. Each
    // doubling still counts against the refinement budget.
    int jump = 1;
    if (!hit_tol && residual > cfg.tol_gap) {
      const double ratio = residual / cfg.tol_gap;
      while (jump < 8 && jump < quad.max_refinements - level &&
             double(std::size_t{1} << jump) < ratio)
        ++jump;
    }
    level += jump - 1;
    d.grid = grid << jump;
    grid = d.grid;
    const double floor_pred = floor_model / double(grid);
    const int polish_cap = floor_pred > 4.0 * cfg.tol_gap ? 15 : 400;
    residual = minimize_on_grid(d, y, b, cfg, iters, hit_tol, true, polish_cap);
    if (!hit_tol && residual > cfg.tol_gap) floor_model = residual * double(grid);
    double change = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      change = std::max(change, std::abs(y[i] - prev[i]));
      scale = std::max(scale, std::abs(y[i]));
    }
    grid_stable = change <= outer_tol * scale;
    if (hit_tol && grid_stable) break;
  }

  PrimalSolution out;
  out.F = to_sequence(freqs, y);
  out.norm_p = norm_p(out.F, p, quad).value;
  out.iterations = iters;
  out.residual = residual;
  out.converged = hit_tol && grid_stable;
  std::vector<std::int64_t> active;
  for (std::size_t i = 0; i < m; ++i)
    if (std::isfinite(b[i]) && y[i] - b[i] <= 1e-6 * (1.0 + std::abs(b[i])))
      active.push_back(freqs[i]);
  out.active_set = FrequencySet(std::move(active));
  return out;
}

CrossValidation cross_validate(const CoefficientSequence& f, int j, const SolverConfig& dual_cfg,
                               const SolverConfig& primal_cfg, const QuadratureConfig& quad,
                               double tolerance) {
  CrossValidation cv;
  cv.tolerance = tolerance;
  cv.dual = solve_dual(f, j, dual_cfg);
  cv.conjugate = rescale_to_conjugate(cv.dual, f, j, quad);
  cv.primal_full = solve_primal(f, j, MajorantMode::full, primal_cfg, quad);
  cv.primal_partial = solve_primal(f, j, MajorantMode::partial, primal_cfg, quad);

  auto max_diff = [](const CoefficientSequence& a, const CoefficientSequence& b) {
    double diff = 0.0;
    for (std::int64_t n : a.support().unite(b.support()))
      diff = std::max(diff, std::abs(a.at(n) - b.at(n)));
    return diff;
  };
  cv.diff_dual_full = max_diff(cv.conjugate.F, cv.primal_full.F);
  cv.diff_partial_full = max_diff(cv.primal_partial.F, cv.primal_full.F);
  cv.agree = cv.diff_dual_full <= tolerance && cv.diff_partial_full <= tolerance;
  return cv;
}

}  // namespace majorant
