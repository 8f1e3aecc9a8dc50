#pragma once

#include <cstdint>

namespace majorant {

// Shared configuration for the two optimizers. `tol_gap` is the certificate
// tolerance: the linearization gap for the dual solver, the projected-
// gradient stationarity residual for the primal solver.
struct SolverConfig {
  enum class StepRule { fixed, backtracking };

  int max_iters = 50000;
  StepRule step_rule = StepRule::backtracking;
  double tol_gap = 1e-10;
  double tol_feas = 1e-12;
  std::uint64_t seed = 1;     // dual: random feasible start; primal: 0 keeps the
                              // deterministic cold start, nonzero perturbs it
  double fixed_step = 0.05;   // only used by StepRule::fixed

  static SolverConfig dual_defaults() { return {}; }

  static SolverConfig primal_defaults() {
    SolverConfig c;
    c.tol_gap = 1e-8;
    c.seed = 0;
    return c;
  }
};

}  // namespace majorant
