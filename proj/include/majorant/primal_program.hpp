#pragma once

#include "majorant/coefficient_sequence.hpp"
#include "majorant/dual_program.hpp"
#include "majorant/quadrature.hpp"
#include "majorant/solver_config.hpp"

namespace majorant {

// partial: F-hat >= |f-hat| on supp f-hat only, other window coefficients
//          free (may go negative).
// full:    additionally F-hat >= 0 off supp f-hat.
enum class MajorantMode { partial, full };

struct PrimalSolution {
  CoefficientSequence F;     // real coefficients on the window T = jS + (j-1)(-S)
  double norm_p = 0.0;       // ||F||_p
  FrequencySet active_set;   // bound constraints tight at the optimum
  int iterations = 0;
  double residual = 0.0;     // final stationarity residual (see below)
  bool converged = false;
};

// Minimizes ψ(y) = ||F_y||_p^p over real vectors y on the window, lower
// bounds b_n = |f-hat(n)| on supp f-hat and 0 (full) / -inf (partial)
// elsewhere. Gradient component at n is p * Re(G_y-hat(n)) with
// G_y = |F_y|^{p-1} sgn F_y via dual_function_coeffs.
//
// Because the feasible set is unbounded, the vertex-gap certificate of the
// dual solver does not exist here; termination uses the projected-gradient
// natural residual max_n |min(g_n, y_n - b_n)| <= cfg.tol_gap instead.
// Each grid level minimizes the exactly-discretized functional (fixed-grid
// quadrature), then the grid doubles and the solve restarts warm until the
// coefficient vector is stable between levels — the same doubling policy
// norm_p uses, applied at the solver level.
//
// cfg.seed == 0 keeps the deterministic cold start y = max(b, 0); a nonzero
// seed adds a random nonnegative perturbation (used by uniqueness tests).
PrimalSolution solve_primal(const CoefficientSequence& f, int j, MajorantMode mode,
                            const SolverConfig& cfg = SolverConfig::primal_defaults(),
                            const QuadratureConfig& quad = {});

// Three independent routes to the same minimal majorant.
struct CrossValidation {
  DualSolution dual;
  ConjugateResult conjugate;     // dual-route G and F
  PrimalSolution primal_full;
  PrimalSolution primal_partial;
  double diff_dual_full = 0.0;     // max coefficient discrepancy
  double diff_partial_full = 0.0;
  double tolerance = 0.0;
  bool agree = false;
};

CrossValidation cross_validate(const CoefficientSequence& f, int j,
                               const SolverConfig& dual_cfg = SolverConfig::dual_defaults(),
                               const SolverConfig& primal_cfg = SolverConfig::primal_defaults(),
                               const QuadratureConfig& quad = {}, double tolerance = 1e-5);

}  // namespace majorant
