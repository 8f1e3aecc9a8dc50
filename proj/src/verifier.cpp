#include "majorant/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "majorant/errors.hpp"
#include "majorant/exponent.hpp"
#include "majorant/spectral_core.hpp"
#include "majorant/sumset_sidon.hpp"

namespace majorant {

bool VerificationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void VerificationReport::add(std::string name, bool pass, double residual, std::string detail) {
  checks.push_back({std::move(name), pass, residual, std::move(detail)});
}

VerificationReport verify_conjugate(const CoefficientSequence& f, const CoefficientSequence& H,
                                    int j, double tol) {
  if (j < 2) throw std::invalid_argument("verify_conjugate requires j >= 2");
  VerificationReport report;
  const CoefficientSequence J = power_product(H, j);
  const FrequencySet s = f.support();

  double neg = 0.0;
  for (const auto& [n, v] : H.entries())
    neg = std::max({neg, -v.real(), std::abs(v.imag())});
  report.add("nonnegative-coefficients", neg <= tol, neg,
             "conjugate candidate has real coefficients >= 0");

  double maj = 0.0;
  for (std::int64_t n : s.unite(J.support())) {
    const double target = std::abs(f.at(n));  // 0 off supp f-hat
    maj = std::max({maj, target - J.at(n).real(), std::abs(J.at(n).imag())});
  }
  report.add("power-product-majorizes", maj <= tol, maj,
             "power-product coefficients dominate |f-hat| on supp f-hat and stay >= 0 off it");

  double slack_viol = 0.0;
  for (std::int64_t n : s.unite(J.support()).unite(H.support())) {
    if (J.at(n).real() > std::abs(f.at(n)) + tol)
      slack_viol = std::max(slack_viol, std::abs(H.at(n)));
  }
  report.add("slack-implies-zero", slack_viol <= tol, slack_viol,
             "candidate coefficient vanishes wherever the majorization is slack");

  double leak = 0.0;
  for (const auto& [n, v] : H.entries())
    if (!s.contains(n)) leak = std::max(leak, std::abs(v));
  report.add("support-confinement", leak <= tol, leak,
             "candidate supported inside supp f-hat (implied by the other three; an isolated "
             "failure here flags numerical inconsistency)");

  return report;
}

std::pair<bool, double> check_dual_norm_inequality(const CoefficientSequence& G,
                                                   const CoefficientSequence& f, int j,
                                                   const QuadratureConfig& quad) {
  if (j < 2) throw std::invalid_argument("check_dual_norm_inequality requires j >= 2");
  const double pre_tol = 1e-9;
  for (const auto& [n, v] : G.entries())
    if (v.real() < -pre_tol * (1.0 + std::abs(v)) || std::abs(v.imag()) > pre_tol)
      throw PreconditionViolated("G must have nonnegative real coefficients");

  const CoefficientSequence F = power_product(G, j);
  for (const auto& [n, v] : G.entries()) {
    const double fa = std::abs(f.at(n));
    if (fa < F.at(n).real() - pre_tol * (1.0 + fa))
      throw PreconditionViolated("|f-hat| must dominate the power product on supp G-hat");
  }

  const double p = special_exponent(j);
  const double margin = norm_p(f, p, quad).value - norm_p(F, p, quad).value;
  return {margin >= -1e-8, margin};
}

EqualityCase make_equality_case(const CoefficientSequence& k, int j) {
  if (j < 2) throw std::invalid_argument("make_equality_case requires j >= 2");
  if (k.empty()) throw EmptyInputError("equality case needs a nonzero seed polynomial");
  EqualityCase c;
  c.k = k;
  c.E_k = exact_majorant(k);
  c.f = power_product(k, j);
  c.F = power_product(c.E_k, j);
  c.j = j;
  return c;
}

VerificationReport equality_case_report(const CoefficientSequence& k, int j,
                                        const QuadratureConfig& quad) {
  const EqualityCase c = make_equality_case(k, j);
  VerificationReport report;

  const double sum_k = even_power_sum(c.k, j);
  const double sum_e = even_power_sum(c.E_k, j);
  const double denom = std::max(sum_e, 1e-300);
  report.add("majorant-power-sum-dominates", sum_k <= sum_e + 1e-12 * denom,
             (sum_k - sum_e) / denom,
             "entrywise absolute value cannot shrink the 2j-norm");

  const bool equal = std::abs(sum_e - sum_k) <= 1e-12 * denom;
  const bool sidon = is_bj_set(c.k.support(), j).is_bj;
  report.add("norm-equality-iff-sidon", equal == sidon, std::abs(sum_e - sum_k) / denom,
             "2j-norm equality with the entrywise absolute value holds exactly on order-j "
             "Sidon supports");

  const double p = special_exponent(j);
  const double norm_f = norm_p(c.f, p, quad).value;
  const double norm_F = norm_p(c.F, p, quad).value;
  const double diff = std::abs(norm_F - norm_f);
  report.add("equal-case-p-norms-match", !equal || diff <= 1e-8 * std::max(1.0, norm_f), diff,
             equal ? "on equality cases the factored pair has matching p-norms"
                   : "not an equality case; p-norm comparison not asserted");

  double maj = 0.0;
  for (std::int64_t n : c.f.support().unite(c.F.support()))
    maj = std::max(maj, std::abs(c.f.at(n)) - c.F.at(n).real());
  const double maj_tol = 1e-9 * std::max(1.0, c.F.max_abs());
  report.add("power-product-majorizes-f", maj <= maj_tol, maj,
             "power product of the entrywise absolute value majorizes f coefficientwise");

  return report;
}

Factorability factorability_check(const CoefficientSequence& F, int j,
                                  const FrequencySet& window, const QuadratureConfig& quad,
                                  double tol) {
  if (j < 2) throw std::invalid_argument("factorability_check requires j >= 2");
  if (F.empty()) throw PreconditionViolated("factorability_check needs a nonzero input");
  if (!F.is_real(1e-12 * std::max(1.0, F.max_abs())))
    throw PreconditionViolated("factorability_check needs real coefficients");

  const std::size_t nnz = F.size();
  if (nnz == 2 || nnz == 3) return Factorability::not_factorable;

  FrequencySet win = window;
  if (win.empty()) {
    const std::int64_t lo = F.min_frequency();
    const std::int64_t hi = F.max_frequency();
    const std::int64_t span = hi - lo;
    std::vector<std::int64_t> pts;
    for (std::int64_t n = lo - 2 * span; n <= hi + 2 * span; ++n) pts.push_back(n);
    win = FrequencySet(std::move(pts));
  }

  const double p = special_exponent(j);
  const WindowCoeffs wc = dual_function_coeffs(F, p, win, quad);
  if (!wc.converged) return Factorability::inconclusive;

  double min_re = 0.0, max_im = 0.0;
  for (std::int64_t n : win) {
    min_re = std::min(min_re, wc.coeffs.at(n).real());
    max_im = std::max(max_im, std::abs(wc.coeffs.at(n).imag()));
  }
  if (min_re < -10.0 * tol) return Factorability::not_factorable;
  if (max_im > 10.0 * tol) return Factorability::inconclusive;

  CoefficientSequence h;
  for (std::int64_t n : win)
    if (wc.coeffs.at(n).real() > tol) h.set(n, wc.coeffs.at(n).real());
  if (h.empty()) return Factorability::inconclusive;

  const CoefficientSequence rebuilt = power_product(h, j);
  double err = 0.0;
  for (std::int64_t n : rebuilt.support().unite(F.support()))
    err = std::max(err, std::abs(rebuilt.at(n) - F.at(n)));
  if (err <= tol * std::max(1.0, F.max_abs())) return Factorability::factorable;
  return Factorability::inconclusive;
}

namespace {

double coordinate_objective(CoefficientSequence& seq, std::int64_t n, double value, double p,
                            const QuadratureConfig& quad) {
  seq.set(n, value);
  return norm_p(seq, p, quad).value;
}

}  // namespace

CoefficientSequence brute_oracle(const CoefficientSequence& f, int j, double resolution,
                                 std::uint64_t seed, const QuadratureConfig& quad) {
  if (j < 2) throw std::invalid_argument("brute_oracle requires j >= 2");
  if (f.empty()) throw EmptyInputError("brute_oracle needs a nonzero input polynomial");
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be > 0");

  const FrequencySet s = f.support();
  const FrequencySet window = majorant_window(s, j);
  if (window.size() > 6)
    throw BudgetExceeded("brute_oracle window has " + std::to_string(window.size()) +
                         " frequencies; limit is 6");

  const double p = special_exponent(j);
  const auto& freqs = window.elements();
  const std::size_t m = freqs.size();
  std::vector<double> lo(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    lo[i] = s.contains(freqs[i]) ? std::abs(f.at(freqs[i])) : 0.0;
    y[i] = lo[i];
  }

  CoefficientSequence seq;
  for (std::size_t i = 0; i < m; ++i) seq.set(freqs[i], y[i]);

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;

  const double golden = 0.6180339887498948482;
  const int max_sweeps = 500;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (std::size_t i = m - 1; i > 0; --i)  // seeded Fisher–Yates
      std::swap(order[i], order[rng() % (i + 1)]);

    double movement = 0.0;
    for (std::size_t oi = 0; oi < m; ++oi) {
      const std::size_t i = order[oi];
      const std::int64_t n = freqs[i];

      // Bracket: expand right until the objective stops decreasing, so the
      // coordinate minimum is certainly inside [a, b] (convexity).
      double a = lo[i];
      double width = std::max(1.0, std::abs(y[i] - a));
      double b = a + width;
      while (coordinate_objective(seq, n, b, p, quad) <
             coordinate_objective(seq, n, b - width / 2.0, p, quad)) {
        width *= 2.0;
        b = a + width;
        if (width > 1e12) throw BudgetExceeded("brute_oracle bracket expansion diverged");
      }

      double x1 = b - golden * (b - a);
      double x2 = a + golden * (b - a);
      double f1 = coordinate_objective(seq, n, x1, p, quad);
      double f2 = coordinate_objective(seq, n, x2, p, quad);
      while (b - a > resolution / 4.0) {
        if (f1 <= f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - golden * (b - a);
          f1 = coordinate_objective(seq, n, x1, p, quad);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + golden * (b - a);
          f2 = coordinate_objective(seq, n, x2, p, quad);
        }
      }
      const double best = std::max(lo[i], 0.5 * (a + b));
      movement = std::max(movement, std::abs(best - y[i]));
      y[i] = best;
      seq.set(n, best);
    }
    if (movement < resolution) {
      CoefficientSequence out;
      for (std::size_t i = 0; i < m; ++i) out.set(freqs[i], y[i]);
      return out;
    }
  }
  throw BudgetExceeded("brute_oracle exceeded its sweep budget without settling");
}

}  // namespace majorant
