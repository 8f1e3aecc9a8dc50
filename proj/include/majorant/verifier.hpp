#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "majorant/coefficient_sequence.hpp"
#include "majorant/quadrature.hpp"

namespace majorant {

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  std::string detail;  // what identity/inequality was checked, in words
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
  void add(std::string name, bool pass, double residual, std::string detail);
};

// Checks the four structural conditions making H the conjugate certificate
// for f at order j (J = power_product(H, j)):
//   nonnegative-coefficients   H-hat >= 0 (and real)
//   power-product-majorizes    J-hat >= |f-hat| on supp f-hat, J-hat >= 0 off it
//   slack-implies-zero         H-hat(n) = 0 wherever J-hat(n) > |f-hat(n)|
//   support-confinement        H-hat = 0 off supp f-hat (implied by the other
//                              three; an isolated failure here flags numerical
//                              inconsistency)
VerificationReport verify_conjugate(const CoefficientSequence& f, const CoefficientSequence& H,
                                    int j, double tol = 1e-6);

// For G >= 0 with |f-hat| >= F-hat on supp G-hat (F = power_product(G, j)):
// returns (margin >= -1e-8, margin) with margin = ||f||_p - ||F||_p.
// Throws PreconditionViolated when the hypothesis fails.
std::pair<bool, double> check_dual_norm_inequality(const CoefficientSequence& G,
                                                   const CoefficientSequence& f, int j,
                                                   const QuadratureConfig& quad = {});

// The factored pair built from a seed polynomial k: f is the power product
// of k, F the power product of the entrywise absolute value E_k.
struct EqualityCase {
  CoefficientSequence k;
  CoefficientSequence E_k;  // exact_majorant(k)
  CoefficientSequence f;    // power_product(k, j)
  CoefficientSequence F;    // power_product(E_k, j)
  int j = 0;
};

EqualityCase make_equality_case(const CoefficientSequence& k, int j);

// Checks, on make_equality_case(k, j):
//   majorant-power-sum-dominates   ||k||_{2j} <= ||E_k||_{2j} (exact sums)
//   norm-equality-iff-sidon        equality of those norms  <=>  supp k is
//                                  an order-j Sidon set
//   equal-case-p-norms-match       when equal: ||F||_p = ||f||_p to 1e-8
//   power-product-majorizes-f      F-hat >= |f-hat| on supp f-hat, F-hat >= 0
VerificationReport equality_case_report(const CoefficientSequence& k, int j,
                                        const QuadratureConfig& quad = {});

enum class Factorability { factorable, not_factorable, inconclusive };

// Decides whether F admits a nonnegative-spectrum factor H with
// power_product(H, j) = F. Exact shortcut: 2 or 3 nonzero coefficients never
// factor (j >= 2). Otherwise extracts candidate coefficients of
// |F|^{1/(2j-1)} sgn F on `window` (default: supp F-hat's interval expanded
// by twice its span) by quadrature: a clearly negative coefficient refutes,
// successful truncated reconstruction confirms, anything else — including
// quadrature non-convergence — is inconclusive (H need not be a polynomial).
Factorability factorability_check(const CoefficientSequence& F, int j,
                                  const FrequencySet& window = {},
                                  const QuadratureConfig& quad = {}, double tol = 1e-6);

// Independent reference solver: coordinate descent with golden-section line
// searches over the window, full-mode bounds, iterated until a whole sweep
// moves every coordinate by < resolution. Shares only norm_p with the
// projected-gradient solvers. Desk scale only: window size <= 6, else
// BudgetExceeded.
CoefficientSequence brute_oracle(const CoefficientSequence& f, int j, double resolution = 1e-7,
                                 std::uint64_t seed = 1, const QuadratureConfig& quad = {});

}  // namespace majorant
