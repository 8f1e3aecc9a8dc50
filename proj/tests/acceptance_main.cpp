// Acceptance gate: nine end-to-end criteria, one pass/fail line each.
// Exits nonzero if any criterion fails. Tolerances are part of the contract
// and are written out literally where they are used.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "majorant/coefficient_sequence.hpp"
#include "majorant/dual_program.hpp"
#include "majorant/exponent.hpp"
#include "majorant/frequency_set.hpp"
#include "majorant/primal_program.hpp"
#include "majorant/quadrature.hpp"
#include "majorant/simplex.hpp"
#include "majorant/spectral_core.hpp"
#include "majorant/sumset_sidon.hpp"
#include "majorant/verifier.hpp"
#include "test_support.hpp"

using namespace majorant;
using namespace testsupport;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s — %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(3);
  ss << x;
  return ss.str();
}

// Everything the slackness criterion needs from one solved instance.
struct SolvedInstance {
  CoefficientSequence f;
  int j = 0;
  CoefficientSequence F;
  CoefficientSequence G;
  bool G_is_windowed = false;  // true when G was recovered on the full window
};

std::vector<SolvedInstance> g_solved;

CoefficientSequence seq_from(const std::vector<std::pair<std::int64_t, std::complex<double>>>& v) {
  CoefficientSequence s;
  for (const auto& [n, c] : v) s.set(n, c);
  return s;
}

// ---------------------------------------------------------------------------
// 1. Flagship instance f = 1 + e^{i theta}, j = 2: three routes agree, the
//    majorant keeps the two unit coefficients, strictly beats ||f||_{4/3},
//    and satisfies ||F|| * K = 1. Under 10 seconds.
void criterion_1() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string why;

  const CoefficientSequence f = real_seq({{0, 1.0}, {1, 1.0}});
  const int j = 2;
  const double p = special_exponent(j);

  const CrossValidation cv = cross_validate(f, j);
  const CoefficientSequence brute = brute_oracle(f, j, 1e-7);
  const CoefficientSequence& F = cv.primal_full.F;

  if (!cv.agree || !cv.dual.converged || !cv.primal_full.converged) {
    ok = false;
    why = "pipeline did not converge/agree";
  }
  const double d_routes = std::max(
      {seq_diff(F, cv.primal_partial.F), seq_diff(F, cv.conjugate.F), seq_diff(F, brute)});
  if (d_routes > 1e-5) {
    ok = false;
    why = "route disagreement " + fmt(d_routes);
  }

  const FrequencySet window = majorant_window(f.support(), j);
  for (const auto& [n, c] : F.entries())
    if (!window.contains(n)) ok = false;

  if (F.at(0).real() < 1.0 - 1e-8 || F.at(1).real() < 1.0 - 1e-8) {
    ok = false;
    why = "unit coefficients eroded";
  }

  const double norm_f = norm_p(f, p).value;
  if (!(cv.primal_full.norm_p < norm_f - 1e-6)) {
    ok = false;
    why = "no strict norm improvement";
  }
  const double product = cv.primal_full.norm_p * cv.dual.K;
  if (std::abs(product - 1.0) > 1e-6) {
    ok = false;
    why = "||F||*K = " + fmt(product);
  }

  const double dt = seconds_since(t0);
  if (dt >= 10.0) {
    ok = false;
    why = "runtime " + fmt(dt) + "s";
  }

  g_solved.push_back({f, j, cv.conjugate.F, cv.conjugate.G, false});
  report(1, ok,
         ok ? "flagship triple agreement " + fmt(d_routes) + ", ||F||*K-1 = " +
                  fmt(product - 1.0) + ", " + fmt(dt) + "s"
            : why);
}

// ---------------------------------------------------------------------------
// 2. Single-exponential closed form: F = {n:|c|}, G = {n:|c|^{1/(2j-1)}},
//    K = 1/|c|, exact to 1e-10, for 20 random (n, c) and j in {2, 3}.
void criterion_2() {
  bool ok = true;
  double worst = 0.0;
  auto gen = rng(202);
  std::uniform_int_distribution<std::int64_t> freq(-8, 8);
  std::uniform_real_distribution<double> mag(0.25, 4.0), phase(0.0, 2.0 * kPi);

  for (int t = 0; t < 20 && ok; ++t) {
    const std::int64_t n = freq(gen);
    const std::complex<double> c = std::polar(mag(gen), phase(gen));
    const CoefficientSequence f = seq_from({{n, c}});
    for (int j : {2, 3}) {
      const DualSolution dual = solve_dual(f, j);
      const ConjugateResult conj = rescale_to_conjugate(dual, f, j);
      const PrimalSolution primal = solve_primal(f, j, MajorantMode::full);
      const double a = std::abs(c);
      const double err =
          std::max({std::abs(dual.K - 1.0 / a), std::abs(conj.F.at(n).real() - a),
                    std::abs(conj.G.at(n).real() - std::pow(a, 1.0 / (2.0 * j - 1.0))),
                    seq_diff(primal.F, conj.F)});
      worst = std::max(worst, err);
      if (err > 1e-10 || !dual.converged || !primal.converged) ok = false;
      g_solved.push_back({f, j, conj.F, conj.G, false});
    }
  }
  report(2, ok, "20 single exponentials, j in {2,3}, worst closed-form error " + fmt(worst));
}

// ---------------------------------------------------------------------------
// 3. Own-majorant fixed points: 50 random nonnegative H with supports of
//    size <= 3 inside [0,5]; solve_primal(power_product(H, j)) must return
//    its input within 1e-5 coefficientwise. Under 5 minutes total.
void criterion_3() {
  const auto t0 = Clock::now();
  bool ok = true;
  double worst = 0.0;
  auto gen = rng(303);
  std::uniform_int_distribution<int> size_d(1, 3);
  std::uniform_int_distribution<std::int64_t> freq(0, 5);
  std::uniform_real_distribution<double> amp(0.3, 0.8);

  for (int t = 0; t < 50; ++t) {
    const int j = (t % 2 == 0) ? 2 : 3;
    std::vector<std::int64_t> supp;
    const int target = size_d(gen);
    while (static_cast<int>(supp.size()) < target) {
      const std::int64_t n = freq(gen);
      if (std::find(supp.begin(), supp.end(), n) == supp.end()) supp.push_back(n);
    }
    CoefficientSequence H;
    for (std::int64_t n : supp) H.set(n, amp(gen));

    const CoefficientSequence f = power_product(H, j);
    const PrimalSolution sol = solve_primal(f, j, MajorantMode::full);
    const double err = seq_diff(sol.F, f);
    worst = std::max(worst, err);
    if (err > 1e-5 || !sol.converged) ok = false;
    g_solved.push_back({f, j, sol.F, {}, true});
  }

  const double dt = seconds_since(t0);
  if (dt >= 300.0) ok = false;
  report(3, ok,
         "50 fixed points, worst coefficient drift " + fmt(worst) + ", " + fmt(dt) + "s");
}

// ---------------------------------------------------------------------------
// 4. Dual norm inequality: 100 randomized instances satisfying the
//    hypothesis (G >= 0, |f-hat| >= power_product(G, j)-hat on supp G-hat);
//    margin ||f||_p - ||F||_p must be >= -1e-8 every time.
void criterion_4() {
  bool ok = true;
  double worst = 1e300;
  auto gen = rng(404);
  std::uniform_int_distribution<int> size_d(1, 3), extra_d(0, 2);
  std::uniform_int_distribution<std::int64_t> freq(0, 4), far(-9, 9);
  std::uniform_real_distribution<double> amp(0.2, 1.0), lift(0.0, 1.0), phase(0.0, 2.0 * kPi);

  for (int t = 0; t < 100; ++t) {
    const int j = (t % 2 == 0) ? 2 : 3;
    std::vector<std::int64_t> supp;
    const int target = size_d(gen);
    while (static_cast<int>(supp.size()) < target) {
      const std::int64_t n = freq(gen);
      if (std::find(supp.begin(), supp.end(), n) == supp.end()) supp.push_back(n);
    }
    CoefficientSequence G;
    for (std::int64_t n : supp) G.set(n, amp(gen));

    const CoefficientSequence F = power_product(G, j);
    CoefficientSequence f;
    for (std::int64_t n : supp)
      f.set(n, std::polar(F.at(n).real() + lift(gen), phase(gen)));
    for (int e = extra_d(gen); e > 0; --e) {
      const std::int64_t n = far(gen);
      if (std::find(supp.begin(), supp.end(), n) == supp.end())
        f.set(n, std::polar(lift(gen) + 0.1, phase(gen)));
    }

    const auto [pass, margin] = check_dual_norm_inequality(G, f, j);
    worst = std::min(worst, margin);
    if (!pass) ok = false;
  }
  report(4, ok, "100 hypothesis-satisfying instances, smallest margin " + fmt(worst));
}

// ---------------------------------------------------------------------------
// 5. Equality biconditional, j = 2: over every support S in {0..6} of size
//    <= 3 with a random unimodular coefficient pattern, the exact power sums
//    of k and its lifted modulus E_k agree iff S is a B_2 set; every
//    equality case also matches in the p = 4/3 norm within 1e-8. The
//    concrete seed k = 1 - e^{i theta} is checked against an independent
//    2^20-point quadrature oracle at relative tolerance 1e-8.
void criterion_5() {
  bool ok = true;
  std::string why;
  auto gen = rng(505);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  int supports = 0, equal_cases = 0;

  for (unsigned mask = 1; mask < (1u << 7); ++mask) {
    if (__builtin_popcount(mask) > 3) continue;
    std::vector<std::int64_t> elems;
    for (int b = 0; b < 7; ++b)
      if (mask & (1u << b)) elems.push_back(b);
    const FrequencySet s(elems);
    ++supports;

    CoefficientSequence k;
    for (std::int64_t n : s) k.set(n, std::polar(1.0, phase(gen)));
    const CoefficientSequence ek = exact_majorant(k);

    const double ps_k = even_power_sum(k, 2);
    const double ps_e = even_power_sum(ek, 2);
    const bool equal = std::abs(ps_k - ps_e) <= 1e-9 * ps_e;
    const bool sidon = is_bj_set(s, 2).is_bj;
    if (equal != sidon) {
      ok = false;
      why = "biconditional broke on a size-" + std::to_string(s.size()) + " support";
    }

    if (sidon) {
      ++equal_cases;
      const double p = special_exponent(2);
      const double nf = norm_p(power_product(k, 2), p).value;
      const double nF = norm_p(power_product(ek, 2), p).value;
      if (std::abs(nf - nF) > 1e-8 * nF) {
        ok = false;
        why = "equality case p-norms differ by " + fmt(std::abs(nf - nF));
      }
    }
  }

  // Concrete pair k = 1 - e^{i theta}.
  const CoefficientSequence k = real_seq({{0, 1.0}, {1, -1.0}});
  const CoefficientSequence f = power_product(k, 2);
  const CoefficientSequence expect_f =
      real_seq({{-1, -1.0}, {0, 3.0}, {1, -3.0}, {2, 1.0}});
  const CoefficientSequence F = power_product(exact_majorant(k), 2);
  const CoefficientSequence expect_F = real_seq({{-1, 1.0}, {0, 3.0}, {1, 3.0}, {2, 1.0}});
  if (seq_diff(f, expect_f) > 1e-12 || seq_diff(F, expect_F) > 1e-12) {
    ok = false;
    why = "concrete power products off";
  }
  const double root4_6 = std::pow(6.0, 0.25);
  const double k4_lib = norm_p(k, 4.0).value;
  const double k4_oracle = oracle_norm_p(k, 4.0, std::size_t{1} << 20);
  const double f43_lib = norm_p(f, 4.0 / 3.0).value;
  const double f43_oracle = oracle_norm_p(f, 4.0 / 3.0, std::size_t{1} << 20);
  const double six34 = std::pow(6.0, 0.75);
  if (!rel_close(k4_lib, root4_6, 1e-8) || !rel_close(k4_oracle, root4_6, 1e-8) ||
      !rel_close(f43_lib, six34, 1e-8) || !rel_close(f43_oracle, six34, 1e-8)) {
    ok = false;
    why = "concrete norms missed 6^{1/4}/6^{3/4}";
  }

  report(5, ok,
         ok ? std::to_string(supports) + " supports, " + std::to_string(equal_cases) +
                  " equality cases, concrete pair at 2^20 oracle ok"
            : why);
}

// ---------------------------------------------------------------------------
// 6. Slackness and support: on every instance solved in criteria 1-3,
//    min(G-hat(n), F-hat(n) - |f-hat(n)|) <= 1e-5 for all window n, and
//    G-hat <= 1e-5 off supp f-hat. Instances solved by the primal route
//    recover G from the dual function of F on the full window, so the
//    off-support bound is a live check there, not a tautology.
void criterion_6() {
  bool ok = true;
  double worst_slack = 0.0, worst_leak = 0.0;

  for (const SolvedInstance& inst : g_solved) {
    const double p = special_exponent(inst.j);
    const FrequencySet window = majorant_window(inst.f.support(), inst.j);
    CoefficientSequence G = inst.G;
    if (inst.G_is_windowed) {
      const WindowCoeffs w = dual_function_coeffs(inst.F, p, window);
      if (!w.converged) ok = false;
      G = w.coeffs;
    }
    for (std::int64_t n : window) {
      const double g = std::abs(G.at(n));
      const double slack = inst.F.at(n).real() - std::abs(inst.f.at(n));
      worst_slack = std::max(worst_slack, std::min(g, slack));
      if (!inst.f.support().contains(n)) worst_leak = std::max(worst_leak, g);
    }
  }
  if (worst_slack > 1e-5 || worst_leak > 1e-5) ok = false;
  report(6, ok,
         std::to_string(g_solved.size()) + " instances, worst min(G,slack) " +
             fmt(worst_slack) + ", worst off-support G " + fmt(worst_leak));
}

// ---------------------------------------------------------------------------
// 7. Norm engine and gradients: quadrature norm_p(g, 2j) matches the exact
//    even-norm within 1e-8 relative on 100 random polynomials (j in
//    {1,2,3}); both solvers' analytic gradients match central finite
//    differences within 1e-5 relative at 20 random feasible points each.
void criterion_7() {
  bool ok = true;
  double worst_norm = 0.0, worst_dual = 0.0, worst_primal = 0.0;
  auto gen = rng(707);

  // Part A: norm engine vs exact Parseval arithmetic.
  {
    std::uniform_int_distribution<int> size_d(1, 5);
    for (int t = 0; t < 100; ++t) {
      const int j = 1 + t % 3;
      const CoefficientSequence g = random_complex_seq(gen, size_d(gen), -6, 6);
      const double exact = norm_even(g, j);
      const QuadResult quad = norm_p(g, 2.0 * j);
      const double err = std::abs(quad.value - exact) / exact;
      worst_norm = std::max(worst_norm, err);
      if (err > 1e-8 || !quad.converged) ok = false;
    }
  }

  // Part B: dual objective gradient 2j * power_product(x, j)-hat vs central
  // differences of the exact even power sum, at simplex-feasible points.
  {
    std::uniform_int_distribution<int> size_d(2, 4);
    std::uniform_int_distribution<std::int64_t> freq(0, 4);
    std::uniform_real_distribution<double> amp(0.5, 1.5), start(0.5, 1.0);
    const double h = 1e-6;
    for (int t = 0; t < 20; ++t) {
      const int j = (t % 2 == 0) ? 2 : 3;
      std::vector<std::int64_t> freqs;
      const int target = size_d(gen);
      while (static_cast<int>(freqs.size()) < target) {
        const std::int64_t n = freq(gen);
        if (std::find(freqs.begin(), freqs.end(), n) == freqs.end()) freqs.push_back(n);
      }
      std::vector<double> w, y0;
      for (std::size_t i = 0; i < freqs.size(); ++i) {
        w.push_back(amp(gen));
        y0.push_back(start(gen));
      }
      const std::vector<double> x = project_weighted_simplex(y0, w);
      CoefficientSequence xs;
      for (std::size_t i = 0; i < freqs.size(); ++i) xs.set(freqs[i], x[i]);

      const CoefficientSequence grad_seq = power_product(xs, j);
      double amax = 0.0, dmax = 0.0;
      for (std::size_t i = 0; i < freqs.size(); ++i) {
        const double analytic = 2.0 * j * grad_seq.at(freqs[i]).real();
        CoefficientSequence up = xs, dn = xs;
        up.set(freqs[i], xs.at(freqs[i]).real() + h);
        dn.set(freqs[i], xs.at(freqs[i]).real() - h);
        const double fd = (even_power_sum(up, j) - even_power_sum(dn, j)) / (2.0 * h);
        amax = std::max(amax, std::abs(analytic));
        dmax = std::max(dmax, std::abs(analytic - fd));
      }
      const double rel = dmax / std::max(amax, 1e-12);
      worst_dual = std::max(worst_dual, rel);
      if (rel > 1e-5) ok = false;
    }
  }

  // Part C: primal objective gradient p * Re(dual-function coefficients) vs
  // central differences of the same fixed-grid functional, at strictly
  // feasible window points.
  {
    std::uniform_int_distribution<int> size_d(1, 3);
    std::uniform_int_distribution<std::int64_t> freq(0, 4);
    std::uniform_real_distribution<double> amp(0.5, 1.5), bump(0.1, 0.6),
        phase(0.0, 2.0 * kPi);
    const std::size_t grid = 256;
    const double h = 1e-6;
    for (int t = 0; t < 20; ++t) {
      const int j = (t % 2 == 0) ? 2 : 3;
      const double p = special_exponent(j);
      std::vector<std::int64_t> supp;
      const int target = size_d(gen);
      while (static_cast<int>(supp.size()) < target) {
        const std::int64_t n = freq(gen);
        if (std::find(supp.begin(), supp.end(), n) == supp.end()) supp.push_back(n);
      }
      CoefficientSequence f;
      for (std::int64_t n : supp) f.set(n, std::polar(amp(gen), phase(gen)));

      const FrequencySet window = majorant_window(FrequencySet(supp), j);
      CoefficientSequence y;
      for (std::int64_t n : window) y.set(n, std::abs(f.at(n)) + bump(gen));

      const WindowCoeffs dual = dual_function_coeffs_fixed(y, p, window, grid);
      double amax = 0.0, dmax = 0.0;
      for (std::int64_t n : window) {
        const double analytic = p * dual.coeffs.at(n).real();
        CoefficientSequence up = y, dn = y;
        up.set(n, y.at(n).real() + h);
        dn.set(n, y.at(n).real() - h);
        const double fd =
            (mean_abs_pow_fixed(up, p, grid) - mean_abs_pow_fixed(dn, p, grid)) / (2.0 * h);
        amax = std::max(amax, std::abs(analytic));
        dmax = std::max(dmax, std::abs(analytic - fd));
      }
      const double rel = dmax / std::max(amax, 1e-12);
      worst_primal = std::max(worst_primal, rel);
      if (rel > 1e-5) ok = false;
    }
  }

  report(7, ok,
         "worst norm rel err " + fmt(worst_norm) + ", worst gradient rel err dual " +
             fmt(worst_dual) + " / primal " + fmt(worst_primal));
}

// ---------------------------------------------------------------------------
// 8. Sidon module vs brute force: is_bj_set agrees with an independent
//    ordered-tuple enumerator on every S in {0..10} with |S| <= 4, j in
//    {2,3}; the canonical non-example yields the witness "0+2 = 1+1".
void criterion_8() {
  bool ok = true;
  int checked = 0;

  for (unsigned mask = 1; mask < (1u << 11); ++mask) {
    if (__builtin_popcount(mask) > 4) continue;
    std::vector<std::int64_t> v;
    for (int b = 0; b < 11; ++b)
      if (mask & (1u << b)) v.push_back(b);
    const FrequencySet s(v);
    for (int j : {2, 3}) {
      const BjResult lib = is_bj_set(s, j);
      if (lib.is_bj != oracle_is_bj(v, j)) ok = false;
      if (!lib.is_bj) {
        if (!lib.witness.has_value()) {
          ok = false;
        } else {
          int ma = 0, mb = 0;
          std::int64_t sa = 0, sb = 0;
          for (const auto& [e, m] : lib.witness->rep_a) ma += m, sa += e * m;
          for (const auto& [e, m] : lib.witness->rep_b) mb += m, sb += e * m;
          if (ma != j || mb != j || sa != lib.witness->target ||
              sb != lib.witness->target || lib.witness->rep_a == lib.witness->rep_b)
            ok = false;
        }
      }
      ++checked;
    }
  }

  const BjResult canon = is_bj_set(FrequencySet{0, 1, 2}, 2);
  if (canon.is_bj || !canon.witness.has_value() || canon.witness->format() != "0+2 = 1+1")
    ok = false;

  report(8, ok, std::to_string(checked) + " (S, j) pairs vs ordered-tuple oracle, witness ok");
}

// ---------------------------------------------------------------------------
// 9. CLI contract: the three exit-code classes and byte-determinism of
//    reports, over the full fixture corpus.
struct RunOut {
  int code = -1;
  std::string out;
};

RunOut run_cli(const std::string& args) {
  RunOut r;
  const std::string cmd = std::string(MAJORANT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void criterion_9() {
  bool ok = true;
  std::string why;
  const std::string dir = MAJORANT_FIXTURES_DIR;

  const std::vector<std::pair<std::string, int>> cases = {
      {"solve " + dir + "/flagship.json", 0},
      {"solve " + dir + "/single_exp.json", 0},
      {"solve " + dir + "/negpair.json", 0},
      {"solve " + dir + "/j3_flagship.json", 0},
      {"solve " + dir + "/b2_support.json", 0},
      {"solve " + dir + "/own_majorant.json", 0},
      {"verify " + dir + "/verify_good.json", 0},
      {"solve " + dir + "/dup_freq.json", 1},
      {"solve " + dir + "/missing_j.json", 1},
      {"solve " + dir + "/zero_coeffs.json", 1},
      {"solve " + dir + "/bad_syntax.json", 1},
      {"verify " + dir + "/verify_missing_h.json", 1},
      {"verify " + dir + "/verify_perturbed.json", 2},
      {"solve " + dir + "/strict_budget.json", 2},
      {"solve --strict " + dir + "/strict_budget.json", 3},
  };

  int files = 0;
  for (const auto& [args, expect] : cases) {
    const RunOut first = run_cli(args);
    if (first.code != expect) {
      ok = false;
      why = "'" + args + "' exited " + std::to_string(first.code) + ", expected " +
            std::to_string(expect);
      break;
    }
    const RunOut second = run_cli(args);
    if (second.code != first.code || second.out != first.out) {
      ok = false;
      why = "'" + args + "' is not byte-deterministic";
      break;
    }
    ++files;
  }

  report(9, ok,
         ok ? std::to_string(files) +
                  " invocations across 14 fixtures: exit classes 0/1/2/3 and "
                  "byte-determinism hold"
            : why);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("acceptance: %d/9 criteria passed\n", 9 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
