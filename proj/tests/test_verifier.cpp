#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "majorant/errors.hpp"
#include "majorant/exponent.hpp"
#include "majorant/primal_program.hpp"
#include "majorant/quadrature.hpp"
#include "majorant/spectral_core.hpp"
#include "majorant/sumset_sidon.hpp"
#include "majorant/verifier.hpp"
#include "test_support.hpp"

using majorant::brute_oracle;
using majorant::check_dual_norm_inequality;
using majorant::CoefficientSequence;
using majorant::equality_case_report;
using majorant::EqualityCase;
using majorant::exact_majorant;
using majorant::Factorability;
using majorant::factorability_check;
using majorant::FrequencySet;
using majorant::make_equality_case;
using majorant::norm_even;
using majorant::norm_p;
using majorant::power_product;
using majorant::special_exponent;
using majorant::VerificationReport;
using majorant::verify_conjugate;
using namespace testsupport;

namespace {

bool passes(const VerificationReport& r, const char* name) {
  const auto* c = r.find(name);
  REQUIRE(c != nullptr);
  return c->pass;
}

}  // namespace

TEST_CASE("verify_conjugate: single exponential certificate") {
  for (int j : {2, 3}) {
    const CoefficientSequence f{{4, {0.0, -2.0}}};  // |c| = 2
    const CoefficientSequence H =
        real_seq({{4, std::pow(2.0, 1.0 / (2.0 * j - 1.0))}});
    const VerificationReport r = verify_conjugate(f, H, j);
    CHECK(r.all_pass());
    for (const auto& c : r.checks) CHECK(std::abs(c.residual) <= 1e-12);
  }
}

TEST_CASE("verify_conjugate: exact power-product pair passes all four checks") {
  const CoefficientSequence f = real_seq({{-1, 1.0}, {0, 3.0}, {1, 3.0}, {2, 1.0}});
  const CoefficientSequence H = real_seq({{0, 1.0}, {1, 1.0}});
  const VerificationReport r = verify_conjugate(f, H, 2);
  CHECK(r.all_pass());
  CHECK(passes(r, "nonnegative-coefficients"));
  CHECK(passes(r, "power-product-majorizes"));
  CHECK(passes(r, "slack-implies-zero"));
  CHECK(passes(r, "support-confinement"));
  CHECK(r.checks.size() == 4);
}

TEST_CASE("verify_conjugate: constructed violations fail the right check") {
  // Slack with mass: J = power_product(H,2) strictly dominates |f-hat| at 0
  // while H(0) > 0, so complementary slackness (condition 3) must fail.
  {
    const CoefficientSequence f = real_seq({{0, 1.0}, {1, 1.0}});
    const CoefficientSequence H = real_seq({{0, 1.0}, {1, 1.0}});  // J(0) = 3 > 1
    const VerificationReport r = verify_conjugate(f, H, 2);
    CHECK_FALSE(passes(r, "slack-implies-zero"));
    CHECK(passes(r, "nonnegative-coefficients"));
    CHECK(passes(r, "power-product-majorizes"));
    CHECK(passes(r, "support-confinement"));
  }
  // Isolated version on a constant: J = 1.331 > 1 = |f-hat(0)|.
  {
    const VerificationReport r =
        verify_conjugate(real_seq({{0, 1.0}}), real_seq({{0, 1.1}}), 2);
    CHECK_FALSE(passes(r, "slack-implies-zero"));
    CHECK(passes(r, "support-confinement"));
  }
  // Scaled-down candidate no longer majorizes.
  {
    const CoefficientSequence f = real_seq({{-1, 1.0}, {0, 3.0}, {1, 3.0}, {2, 1.0}});
    const VerificationReport r =
        verify_conjugate(f, real_seq({{0, 0.75}, {1, 0.75}}), 2);
    CHECK_FALSE(passes(r, "power-product-majorizes"));
    CHECK(passes(r, "nonnegative-coefficients"));
  }
  // A negative coefficient breaks condition 1.
  {
    const CoefficientSequence f = real_seq({{-1, 1.0}, {0, 3.0}, {1, 3.0}, {2, 1.0}});
    const VerificationReport r =
        verify_conjugate(f, real_seq({{0, 1.0}, {1, -1.0}}), 2);
    CHECK_FALSE(passes(r, "nonnegative-coefficients"));
  }
  // Support leak: candidate mass outside supp f-hat.
  {
    const VerificationReport r =
        verify_conjugate(real_seq({{0, 1.0}}), real_seq({{0, 1.0}, {5, 0.5}}), 2);
    CHECK_FALSE(passes(r, "support-confinement"));
  }
}

TEST_CASE("verify_conjugate: uniqueness probe rejects every bumped certificate") {
  const CoefficientSequence f = real_seq({{-1, 1.0}, {0, 3.0}, {1, 3.0}, {2, 1.0}});
  const CoefficientSequence H = real_seq({{0, 1.0}, {1, 1.0}});
  REQUIRE(verify_conjugate(f, H, 2).all_pass());
  for (std::int64_t n : H.support()) {
    CoefficientSequence bumped = H;
    bumped.set(n, H.at(n) + 0.01);
    CHECK_FALSE(verify_conjugate(f, bumped, 2).all_pass());
  }
}

TEST_CASE("check_dual_norm_inequality: pinned and random instances") {
  const CoefficientSequence G = real_seq({{0, 0.5}, {1, 0.5}});
  const CoefficientSequence F = power_product(G, 2);

  // Equality case of the hypothesis: f = F gives margin ~ 0.
  const auto [ok_eq, margin_eq] = check_dual_norm_inequality(G, F, 2);
  CHECK(ok_eq);
  CHECK(std::abs(margin_eq) <= 1e-9);

  // Adding an orthogonal frequency: margin is whatever quadrature says,
  // but the theorem requires it to stay >= -1e-8 (here it is positive).
  CoefficientSequence f_extra = F;
  f_extra.set(5, {1.0, 0.0});
  const auto [ok_extra, margin_extra] = check_dual_norm_inequality(G, f_extra, 2);
  CHECK(ok_extra);
  CHECK(margin_extra > 0.0);

  // Random hypothesis-satisfying instances: F-hat scaled up in modulus on
  // the support of G-hat, arbitrary phases.
  auto gen = rng(701);
  std::uniform_real_distribution<double> lift(1.0, 2.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  for (int j : {2, 3}) {
    for (int trial = 0; trial < 15; ++trial) {
      const CoefficientSequence g = random_real_seq(gen, 2 + trial % 2, 0, 4,
                                                    /*nonnegative=*/true);
      const CoefficientSequence pp = power_product(g, j);
      CoefficientSequence::Map m;
      for (const auto& [n, v] : pp.entries())
        if (g.contains(n)) m[n] = std::polar(v.real() * lift(gen), phase(gen));
      const CoefficientSequence f = CoefficientSequence::from_map(m);
      const auto [ok, margin] = check_dual_norm_inequality(g, f, j);
      CHECK(ok);
      CHECK(margin >= -1e-8);
    }
  }

  // Violated hypothesis: |f-hat| < F-hat somewhere on supp G-hat.
  CHECK_THROWS_AS(check_dual_norm_inequality(G, real_seq({{0, 0.1}, {1, 1.0}}), 2),
                  majorant::PreconditionViolated);
  // Negative G violates the other precondition.
  CHECK_THROWS_AS(check_dual_norm_inequality(real_seq({{0, -0.5}}), F, 2),
                  majorant::PreconditionViolated);
}

TEST_CASE("equality case: Sidon support with signs gives matching norms") {
  // k = 1 - e^{i theta}: support {0,1} is B2.
  const CoefficientSequence k = real_seq({{0, 1.0}, {1, -1.0}});
  const EqualityCase c = make_equality_case(k, 2);
  CHECK(c.E_k == real_seq({{0, 1.0}, {1, 1.0}}));
  CHECK(c.f == real_seq({{-1, -1.0}, {0, 3.0}, {1, -3.0}, {2, 1.0}}));
  CHECK(c.F == real_seq({{-1, 1.0}, {0, 3.0}, {1, 3.0}, {2, 1.0}}));

  CHECK(rel_close(norm_even(k, 2), std::pow(6.0, 0.25), 1e-14));
  CHECK(rel_close(norm_even(c.E_k, 2), std::pow(6.0, 0.25), 1e-14));

  // p-norms of the factored pair agree, against the independent oracle:
  // both equal 6^{3/4}.
  const double p = 4.0 / 3.0;
  const double six34 = std::pow(6.0, 0.75);
  CHECK(rel_close(norm_p(c.f, p).value, six34, 1e-8));
  CHECK(rel_close(norm_p(c.F, p).value, six34, 1e-8));
  CHECK(rel_close(oracle_norm_p(c.f, p, 1u << 16), six34, 1e-8));

  const VerificationReport r = equality_case_report(k, 2);
  CHECK(r.all_pass());
  CHECK(passes(r, "majorant-power-sum-dominates"));
  CHECK(passes(r, "norm-equality-iff-sidon"));
  CHECK(passes(r, "equal-case-p-norms-match"));
  CHECK(passes(r, "power-product-majorizes-f"));
}

TEST_CASE("equality case: non-Sidon support with generic signs is strict") {
  // supp = {0,1,2} collides (0+2 = 1+1); the sign pattern (+,+,-) breaks
  // the alignment, so the 4-norm drops strictly below the majorant's.
  const CoefficientSequence k = real_seq({{0, 1.0}, {1, 1.0}, {2, -1.0}});
  CHECK(norm_even(k, 2) < norm_even(exact_majorant(k), 2) - 1e-6);
  const VerificationReport r = equality_case_report(k, 2);
  CHECK(r.all_pass());

  // Singleton: trivially an equality case.
  CHECK(equality_case_report(CoefficientSequence{{7, {0.0, 3.0}}}, 2).all_pass());
}

TEST_CASE("equality case: aligned signs on a non-Sidon support are flagged") {
  // All-positive coefficients on {0,1,2}: k equals its own exact majorant,
  // so the norms agree even though the support is not B2. The instance-level
  // biconditional check must report this degenerate alignment as a failure —
  // the characterization concerns generic sign patterns.
  const CoefficientSequence k = real_seq({{0, 1.0}, {1, 1.0}, {2, 1.0}});
  const VerificationReport r = equality_case_report(k, 2);
  CHECK_FALSE(passes(r, "norm-equality-iff-sidon"));
  CHECK(passes(r, "majorant-power-sum-dominates"));
}

TEST_CASE("factorability: pinned examples") {
  // Two or three nonzero coefficients never factor (exact shortcut).
  CHECK(factorability_check(real_seq({{0, 1.0}, {1, 1.0}}), 2) ==
        Factorability::not_factorable);
  CHECK(factorability_check(real_seq({{0, 1.0}, {1, 1.0}, {3, 1.0}}), 2) ==
        Factorability::not_factorable);

  // Exact reconstruction: the own-majorant pair.
  CHECK(factorability_check(real_seq({{-1, 1.0}, {0, 3.0}, {1, 3.0}, {2, 1.0}}), 2) ==
        Factorability::factorable);

  // Constant: H = 5^{1/3}.
  CHECK(factorability_check(real_seq({{0, 5.0}}), 2) == Factorability::factorable);
}

TEST_CASE("factorability: negative root coefficient refutes") {
  // f = conj(k) k^2 for k = 1 - e^{i theta}: the unique root candidate
  // |f|^{1/3} sgn f is k itself, whose coefficient at 1 is -1 < 0.
  const CoefficientSequence f = real_seq({{-1, -1.0}, {0, 3.0}, {1, -3.0}, {2, 1.0}});
  CHECK(factorability_check(f, 2) == Factorability::not_factorable);
}

TEST_CASE("brute_oracle: closed forms and agreement with the primal solver") {
  // Single exponential.
  const CoefficientSequence single = brute_oracle(CoefficientSequence{{3, {0.0, 2.0}}}, 2);
  CHECK(std::abs(single.at(3).real() - 2.0) <= 1e-6);

  // Flagship: agrees with solve_primal within 10x the oracle resolution.
  const CoefficientSequence f = real_seq({{0, 1.0}, {1, 1.0}});
  const CoefficientSequence via_oracle = brute_oracle(f, 2);
  const majorant::PrimalSolution via_solver =
      majorant::solve_primal(f, 2, majorant::MajorantMode::full);
  CHECK(seq_diff(via_oracle, via_solver.F) <= 1e-6);

  // Own-majorant fixed point. The oracle's window budget of 6 frequencies
  // only admits single-exponential power products (any wider factor blows
  // the window to 10), so the fixed-point case is the singleton one.
  const CoefficientSequence own = power_product(real_seq({{2, 1.3}}), 2);
  CHECK(seq_diff(brute_oracle(own, 2), own) <= 1e-6);

  // Desk-scale guard: window {0,1,3} at j=2 spans 10 > 6 frequencies.
  CHECK_THROWS_AS(brute_oracle(real_seq({{0, 1.0}, {1, 1.0}, {3, 1.0}}), 2),
                  majorant::BudgetExceeded);
}

TEST_CASE("strict improvement for small nonnegative supports") {
  // Nonnegative f with 2 or 3 nonzero coefficients never factors, so its
  // minimal majorant norm is strictly below ||f||_p.
  for (const CoefficientSequence& f :
       {real_seq({{0, 1.0}, {1, 1.0}}), real_seq({{0, 2.0}, {1, 1.0}}),
        real_seq({{0, 1.0}, {1, 1.0}, {3, 1.0}})}) {
    const majorant::PrimalSolution sol =
        majorant::solve_primal(f, 2, majorant::MajorantMode::full);
    REQUIRE(sol.converged);
    CHECK(sol.norm_p < norm_p(f, special_exponent(2)).value - 1e-6);
  }
}
