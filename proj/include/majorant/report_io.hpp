#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "majorant/coefficient_sequence.hpp"
#include "majorant/quadrature.hpp"
#include "majorant/solver_config.hpp"
#include "majorant/verifier.hpp"

namespace majorant {

// Parsed problem input: {"j": 2, "coefficients": [{"n":0,"re":1,"im":0},...],
// "solver": {...}?, "quadrature": {...}?}. Config sections are optional and
// may set any subset of fields; parsed values land on top of the defaults.
struct ProblemFile {
  int j = 0;
  CoefficientSequence coefficients;
  std::optional<SolverConfig> solver;
  std::optional<QuadratureConfig> quadrature;
};

// Verification input: {"j": 2, "f": [...], "H": [...], "F": [...]?,
// "quadrature": {...}?}.
struct VerifyFile {
  int j = 0;
  CoefficientSequence f;
  CoefficientSequence H;
  std::optional<CoefficientSequence> F;
  std::optional<QuadratureConfig> quadrature;
};

struct SolveDiagnostics {
  int dual_iterations = 0;
  double dual_gap = 0.0;
  bool dual_converged = false;
  int primal_iterations = 0;
  double primal_residual = 0.0;
  bool primal_converged = false;
  int primal_partial_iterations = 0;
  double primal_partial_residual = 0.0;
  bool primal_partial_converged = false;
  double cross_diff_dual_full = 0.0;
  double cross_diff_partial_full = 0.0;
  bool cross_agree = false;
};

// Machine-readable result document. Serialization is canonical: fixed key
// order, coefficients sorted by frequency, floats printed with %.17g so the
// document round-trips losslessly and byte-identical reruns diff clean.
struct ReportFile {
  std::string tool;               // "majorant <version>"
  std::string command;            // "solve" | "verify"
  int j = 0;
  CoefficientSequence input_f;
  std::optional<CoefficientSequence> input_H;
  std::string mode;               // primal mode echo ("full" | "partial")
  SolverConfig solver;           // effective config, including the seed used
  QuadratureConfig quadrature;
  std::optional<double> K_p;
  CoefficientSequence G;
  CoefficientSequence F;
  double norm_f_p = 0.0;
  double norm_F_p = 0.0;
  double norm_G_2j = 0.0;
  std::vector<CheckResult> checks;
  std::optional<SolveDiagnostics> diagnostics;
};

// %.17g — shortest form that still round-trips IEEE doubles exactly.
std::string format_float(double v);

// All parsers throw SchemaError naming the offending field.
ProblemFile parse_problem(const std::string& text);
VerifyFile parse_verify(const std::string& text);
ReportFile parse_report(const std::string& text);

std::string serialize_problem(const ProblemFile& p);
std::string serialize_report(const ReportFile& r);

// True when the document carries a "tool" key, i.e. is a ReportFile.
bool looks_like_report(const std::string& text);

}  // namespace majorant
