#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "majorant/coefficient_sequence.hpp"
#include "majorant/quadrature.hpp"
#include "majorant/solver_config.hpp"

namespace majorant {

// Minimizer of Φ(x) = ||x||_{2j}^{2j} over the weighted simplex
// { x >= 0 on supp f-hat, sum |f-hat(n)| x_n = 1 }.
struct DualSolution {
  CoefficientSequence h;   // nonnegative, supported on supp f-hat
  double K = 0.0;          // ||h||_{2j}
  int iterations = 0;
  double gap = 0.0;        // final linearization-gap certificate
  bool converged = false;
};

// Projected gradient with analytic gradient 2j * power_product(x, j)-hat,
// terminating when the vertex-linearization gap
//   <grad, x> - min_n grad(n)/w_n
// falls below cfg.tol_gap. Deterministic for fixed (f, j, cfg): the feasible
// start is drawn from cfg.seed. Throws EmptyInputError when f has no nonzero
// coefficients; requires j >= 2.
DualSolution solve_dual(const CoefficientSequence& f, int j,
                        const SolverConfig& cfg = SolverConfig::dual_defaults());

// The conjugate factor G = K^{-p} h and its power product F.
struct ConjugateResult {
  CoefficientSequence G;
  CoefficientSequence F;            // = power_product(G, j)
  double norm_F_p = 0.0;            // ||F||_p, quadrature
  double norm_G_2j = 0.0;           // ||G||_{2j}, exact
  FrequencySet slackness_active;    // n in supp f-hat with F-hat(n) = |f-hat(n)|
  std::map<std::int64_t, double> slackness_residuals;  // n -> min(G-hat, F-hat - |f-hat|)
};

// Rescales the dual minimizer to the conjugate pair (G, F). The exponent is
// t = K^{-p}: combined with sum |f-hat| h-hat = 1 it is the unique scaling
// making F-hat = |f-hat| hold on supp G-hat, which kkt_report validates
// numerically on every call path. Throws ScalingMismatchError if the
// identity sum_n F-hat(n) G-hat(n) = ||G||_{2j}^{2j} fails beyond 1e-6
// relative.
ConjugateResult rescale_to_conjugate(const DualSolution& sol, const CoefficientSequence& f,
                                     int j, const QuadratureConfig& quad = {});

// Named stationarity residuals of the conjugate pair:
//   min_G_on_support            min of G-hat over supp G-hat        (>= -tol)
//   min_majorization_slack      min over supp f-hat of F-hat - |f-hat|  (>= -tol)
//   max_complementary_slackness max over n of min(G-hat, F-hat - |f-hat|) (<= tol)
//   max_G_leak_off_support      max |G-hat| off supp f-hat          (<= tol)
std::map<std::string, double> kkt_report(const CoefficientSequence& f, const ConjugateResult& r,
                                         int j);

}  // namespace majorant
