// Command-line front end: solve / verify / sidon / sample / norm.
//
// Exit codes: 0 all checks pass; 1 I/O or schema error; 2 verification
// failure; 3 solver or quadrature non-convergence when --strict is given.

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "majorant/errors.hpp"
#include "majorant/exponent.hpp"
#include "majorant/primal_program.hpp"
#include "majorant/report_io.hpp"
#include "majorant/spectral_core.hpp"
#include "majorant/sumset_sidon.hpp"
#include "majorant/verifier.hpp"
#include "majorant/version.hpp"

namespace {

using namespace majorant;

constexpr double kTolTiny = 1e-9;           // exact-by-construction residuals
constexpr double kTolKkt = 1e-5;            // solver-accuracy residuals
constexpr double kTolNormIdentity = 1e-6;   // K * ||F||_p = 1
constexpr double kTolNormBound = 1e-8;      // ||F||_p <= ||f||_p

struct CommonFlags {
  std::optional<int> j;
  std::string mode = "full";
  bool strict = false;
  std::optional<double> tol_gap;
  std::optional<int> grid;
  std::optional<std::uint64_t> seed;
  std::string out;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
  if (!out) throw std::runtime_error("cannot write output file: " + out_path);
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("MAJORANT_SEED");
  if (s == nullptr || *s == '\0') return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (errno != 0 || end == s || *end != '\0')
    throw std::runtime_error("MAJORANT_SEED must be a nonnegative integer");
  return v;
}

// Precedence: environment > flag > file > default.
SolverConfig resolve_solver(const std::optional<SolverConfig>& from_file,
                            const CommonFlags& flags, SolverConfig defaults) {
  SolverConfig cfg = from_file ? *from_file : defaults;
  if (flags.tol_gap) cfg.tol_gap = *flags.tol_gap;
  if (flags.seed) cfg.seed = *flags.seed;
  if (auto env = env_seed()) cfg.seed = *env;
  return cfg;
}

QuadratureConfig resolve_quadrature(const std::optional<QuadratureConfig>& from_file,
                                    const CommonFlags& flags) {
  QuadratureConfig cfg = from_file ? *from_file : QuadratureConfig{};
  if (flags.grid) cfg.base_grid = static_cast<std::size_t>(*flags.grid);
  cfg.validate();
  return cfg;
}

std::string tool_id() { return std::string(kToolName) + " " + kVersion; }

// ---- solve ----------------------------------------------------------------

int cmd_solve(const std::string& input, const CommonFlags& flags) {
  const ProblemFile problem = parse_problem(read_file(input));
  const int j = flags.j.value_or(problem.j);
  if (j < 2) throw SchemaError("j", "solve requires j >= 2");
  const double p = special_exponent(j);

  SolverConfig dual_cfg = resolve_solver(problem.solver, flags, SolverConfig::dual_defaults());
  SolverConfig primal_cfg = SolverConfig::primal_defaults();
  const QuadratureConfig quad = resolve_quadrature(problem.quadrature, flags);

  const CrossValidation cv =
      cross_validate(problem.coefficients, j, dual_cfg, primal_cfg, quad);
  const auto kkt = kkt_report(problem.coefficients, cv.conjugate, j);

  ReportFile r;
  r.tool = tool_id();
  r.command = "solve";
  r.j = j;
  r.input_f = problem.coefficients;
  r.mode = flags.mode;
  r.solver = dual_cfg;
  r.quadrature = quad;
  r.K_p = cv.dual.K;
  r.G = cv.conjugate.G;
  r.F = cv.conjugate.F;
  const QuadResult norm_f = norm_p(problem.coefficients, p, quad);
  r.norm_f_p = norm_f.value;
  r.norm_F_p = cv.conjugate.norm_F_p;
  r.norm_G_2j = cv.conjugate.norm_G_2j;

  VerificationReport checks = verify_conjugate(problem.coefficients, cv.conjugate.G, j);
  checks.add("kkt-factor-nonnegative", kkt.at("min_G_on_support") >= -kTolTiny,
             kkt.at("min_G_on_support"),
             "smallest conjugate-factor coefficient over its support");
  checks.add("kkt-majorization-slack", kkt.at("min_majorization_slack") >= -kTolKkt,
             kkt.at("min_majorization_slack"),
             "smallest F-hat - |f-hat| over the input support");
  checks.add("kkt-complementary-slackness",
             kkt.at("max_complementary_slackness") <= kTolKkt,
             kkt.at("max_complementary_slackness"),
             "largest min(G-hat, F-hat - |f-hat|): factor mass only on tight frequencies");
  checks.add("kkt-support-leak", kkt.at("max_G_leak_off_support") <= kTolTiny,
             kkt.at("max_G_leak_off_support"),
             "largest |G-hat| outside the input support");
  checks.add("cross-route-agreement", cv.agree,
             std::max(cv.diff_dual_full, cv.diff_partial_full),
             "dual-route and primal-route majorants agree coefficientwise");
  const double scaling_residual = std::abs(cv.dual.K * cv.conjugate.norm_F_p - 1.0);
  checks.add("norm-scaling-identity", scaling_residual <= kTolNormIdentity, scaling_residual,
             "K * ||F||_p = 1 ties the dual optimum to the majorant norm");
  const double bound_residual = cv.conjugate.norm_F_p - norm_f.value;
  checks.add("majorant-norm-bound", bound_residual <= kTolNormBound, bound_residual,
             "minimal majorant norm does not exceed ||f||_p");
  r.checks = checks.checks;

  SolveDiagnostics d;
  d.dual_iterations = cv.dual.iterations;
  d.dual_gap = cv.dual.gap;
  d.dual_converged = cv.dual.converged;
  d.primal_iterations = cv.primal_full.iterations;
  d.primal_residual = cv.primal_full.residual;
  d.primal_converged = cv.primal_full.converged;
  d.primal_partial_iterations = cv.primal_partial.iterations;
  d.primal_partial_residual = cv.primal_partial.residual;
  d.primal_partial_converged = cv.primal_partial.converged;
  d.cross_diff_dual_full = cv.diff_dual_full;
  d.cross_diff_partial_full = cv.diff_partial_full;
  d.cross_agree = cv.agree;
  r.diagnostics = d;

  write_output(flags.out, serialize_report(r));

  const bool converged = cv.dual.converged && cv.primal_full.converged &&
                         cv.primal_partial.converged && norm_f.converged;
  if (flags.strict && !converged) {
    std::cerr << "error: solver or quadrature did not converge (strict mode)\n";
    return 3;
  }
  return checks.all_pass() ? 0 : 2;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(const std::string& input, const CommonFlags& flags) {
  const VerifyFile file = parse_verify(read_file(input));
  const int j = flags.j.value_or(file.j);
  if (j < 1) throw SchemaError("j", "verify requires j >= 1");
  const double p = special_exponent(j);
  const QuadratureConfig quad = resolve_quadrature(file.quadrature, flags);

  const CoefficientSequence F = power_product(file.H, j);

  VerificationReport checks = verify_conjugate(file.f, file.H, j);
  bool norms_converged = true;
  try {
    const auto [pass, margin] = check_dual_norm_inequality(file.H, file.f, j, quad);
    checks.add("dual-norm-inequality", pass, margin,
               "||f||_p - ||power_product(H)||_p >= 0 under exact-majorization hypothesis");
  } catch (const PreconditionViolated& e) {
    checks.add("dual-norm-inequality", false, 0.0,
               std::string("hypothesis violated: ") + e.what());
  }
  if (file.F) {
    double residual = 0.0;
    for (std::int64_t n : file.F->support().unite(F.support()))
      residual = std::max(residual, std::abs(file.F->at(n) - F.at(n)));
    const double scale = std::max(1.0, F.max_abs());
    checks.add("stated-power-product-matches", residual <= 1e-8 * scale, residual,
               "F section equals power_product(H, j) coefficientwise");
  }

  ReportFile r;
  r.tool = tool_id();
  r.command = "verify";
  r.j = j;
  r.input_f = file.f;
  r.input_H = file.H;
  r.quadrature = quad;
  r.G = file.H;
  r.F = F;
  const QuadResult norm_f = norm_p(file.f, p, quad);
  const QuadResult norm_F = norm_p(F, p, quad);
  norms_converged = norm_f.converged && norm_F.converged;
  r.norm_f_p = norm_f.value;
  r.norm_F_p = norm_F.value;
  r.norm_G_2j = file.H.empty() ? 0.0 : norm_even(file.H, j);
  r.checks = checks.checks;

  write_output(flags.out, serialize_report(r));

  if (flags.strict && !norms_converged) {
    std::cerr << "error: quadrature did not converge (strict mode)\n";
    return 3;
  }
  return checks.all_pass() ? 0 : 2;
}

// ---- sidon ----------------------------------------------------------------

FrequencySet parse_set_spec(const std::string& spec) {
  std::vector<std::int64_t> values;
  std::string token;
  std::istringstream in(spec);
  while (std::getline(in, token, ',')) {
    const auto first = token.find_first_not_of(" \t");
    if (first == std::string::npos)
      throw std::runtime_error("set spec: empty element in '" + spec + "'");
    const auto last = token.find_last_not_of(" \t");
    token = token.substr(first, last - first + 1);
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(token.c_str(), &end, 10);
    if (errno != 0 || end == token.c_str() || *end != '\0')
      throw std::runtime_error("set spec: '" + token + "' is not an integer");
    values.push_back(v);
  }
  if (values.empty()) throw std::runtime_error("set spec: no elements given");
  return FrequencySet(values);
}

int cmd_sidon(const std::string& spec, int j) {
  const FrequencySet s = parse_set_spec(spec);
  const BjResult result = is_bj_set(s, j);
  if (result.is_bj) {
    std::cout << "true\n";
  } else {
    std::cout << "false\n";
    std::cout << "witness: " << result.witness->format() << "\n";
  }
  return 0;
}

// ---- sample ---------------------------------------------------------------

int cmd_sample(const std::string& input, int points, const CommonFlags& flags) {
  if (points < 1) throw std::runtime_error("--points must be >= 1");
  const std::string text = read_file(input);
  CoefficientSequence series;
  if (looks_like_report(text)) {
    series = parse_report(text).F;
  } else {
    series = parse_problem(text).coefficients;
  }

  const std::size_t n = static_cast<std::size_t>(points);
  const DenseWindow w = dense_window(series);

  // Samples are taken on the plain endpoint grid (θ_0 = -π) so that, for even
  // N, θ = 0 is among the output rows; this grid is presentation only and is
  // distinct from the offset grid the quadrature kernels integrate on.
  std::string csv = "theta,re,im,abs\n";
  for (std::size_t k = 0; k < n; ++k) {
    const double theta =
        -M_PI + 2.0 * M_PI * (static_cast<double>(k) / static_cast<double>(n));
    std::complex<double> value{0.0, 0.0};
    if (!w.coeff.empty()) {
      const std::complex<double> z = std::polar(1.0, theta);
      value = w.coeff.back();
      for (std::size_t i = w.coeff.size() - 1; i-- > 0;) value = value * z + w.coeff[i];
      value *= std::polar(1.0, static_cast<double>(w.n_min) * theta);
    }
    csv += format_float(theta) + "," + format_float(value.real()) + "," +
           format_float(value.imag()) + "," + format_float(std::abs(value)) + "\n";
  }
  write_output(flags.out, csv);
  return 0;
}

// ---- norm -----------------------------------------------------------------

int cmd_norm(const std::string& input, const CommonFlags& flags) {
  const ProblemFile problem = parse_problem(read_file(input));
  const int j = flags.j.value_or(problem.j);
  if (j < 1) throw SchemaError("j", "norm requires j >= 1");
  const double p = special_exponent(j);
  const QuadratureConfig quad = resolve_quadrature(problem.quadrature, flags);

  const QuadResult np = norm_p(problem.coefficients, p, quad);
  const double n2j = norm_even(problem.coefficients, j);

  std::string out;
  out += "j " + std::to_string(j) + "\n";
  out += "p " + format_float(p) + "\n";
  out += "norm_p " + format_float(np.value) + "\n";
  out += "p_conjugate " + std::to_string(2 * j) + "\n";
  out += "norm_p_conjugate " + format_float(n2j) + "\n";
  write_output(flags.out, out);
  if (flags.strict && !np.converged) {
    std::cerr << "error: quadrature did not converge (strict mode)\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimal Fourier majorants at special exponents p = 2j/(2j-1)"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string input;
  std::string set_spec;
  int sidon_j = 0;
  int points = 0;

  auto add_common = [&](CLI::App* sub, bool with_solver_flags) {
    sub->add_option("--j", flags.j, "order j of the special exponent p = 2j/(2j-1)");
    sub->add_option("--grid", flags.grid, "quadrature base grid size")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--strict", flags.strict, "exit 3 on solver/quadrature non-convergence");
    sub->add_option("--out", flags.out, "write output to this path instead of stdout");
    if (with_solver_flags) {
      sub->add_option("--tol-gap", flags.tol_gap, "dual gap certificate tolerance")
          ->check(CLI::PositiveNumber);
      sub->add_option("--seed", flags.seed, "solver start seed (MAJORANT_SEED overrides)");
      sub->add_option("--mode", flags.mode, "majorant constraint regime echoed in the report")
          ->check(CLI::IsMember({"full", "partial"}));
    }
  };

  CLI::App* solve = app.add_subcommand("solve", "compute the minimal majorant and its factor");
  solve->add_option("input", input, "problem file (JSON)")->required();
  add_common(solve, true);

  CLI::App* verify = app.add_subcommand("verify", "check a candidate conjugate factor H for f");
  verify->add_option("input", input, "verification file (JSON with j, f, H, optional F)")
      ->required();
  add_common(verify, false);

  CLI::App* sidon = app.add_subcommand("sidon", "order-j Sidon (distinct j-fold sums) test");
  sidon->add_option("set", set_spec, "comma-separated integer set, e.g. \"0,1,3\"")->required();
  sidon->add_option("--j", sidon_j, "multiset order")->required()->check(CLI::PositiveNumber);

  CLI::App* sample = app.add_subcommand("sample", "write CSV samples of the polynomial");
  sample->add_option("input", input, "problem file or solve report (JSON)")->required();
  sample->add_option("--points", points, "number of uniform sample points on [-pi, pi)")
      ->required();
  sample->add_option("--out", flags.out, "write CSV to this path instead of stdout");

  CLI::App* norm = app.add_subcommand("norm", "print ||f||_p and ||f||_2j for p = 2j/(2j-1)");
  norm->add_option("input", input, "problem file (JSON)")->required();
  add_common(norm, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(input, flags);
    if (verify->parsed()) return cmd_verify(input, flags);
    if (sidon->parsed()) return cmd_sidon(set_spec, sidon_j);
    if (sample->parsed()) return cmd_sample(input, points, flags);
    if (norm->parsed()) return cmd_norm(input, flags);
    return 1;
  } catch (const ScalingMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
