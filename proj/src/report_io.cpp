#include "majorant/report_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <set>

#include "json.hpp"

#include "majorant/errors.hpp"

namespace majorant {

using nlohmann::json;

std::string format_float(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// ---- parsing helpers ----------------------------------------------------

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw SchemaError(where.empty() ? key : where + "." + key, "required field missing");
  return obj.at(key);
}

std::string path_of(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

int parse_int(const json& v, const std::string& path, long long lo, long long hi) {
  if (!v.is_number_integer())
    throw SchemaError(path, "expected an integer");
  const long long x = v.get<long long>();
  if (x < lo || x > hi) throw SchemaError(path, "integer out of admissible range");
  return static_cast<int>(x);
}

double parse_double(const json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  return v.get<double>();
}

std::uint64_t parse_seed(const json& v, const std::string& path) {
  if (!(v.is_number_integer() && v.get<long long>() >= 0) && !v.is_number_unsigned())
    throw SchemaError(path, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

CoefficientSequence parse_coefficients(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw SchemaError(where, "expected an array of coefficient records");
  CoefficientSequence out;
  std::set<std::int64_t> seen;
  std::size_t i = 0;
  for (const auto& item : arr) {
    const std::string path = where + "[" + std::to_string(i) + "]";
    if (!item.is_object()) throw SchemaError(path, "expected an object {n, re, im}");
    if (!item.contains("n") || !item.at("n").is_number_integer())
      throw SchemaError(path + ".n", "expected an integer frequency");
    const std::int64_t n = item.at("n").get<std::int64_t>();
    if (!seen.insert(n).second) throw SchemaError(path + ".n", "duplicate frequency");
    double re = 0.0, im = 0.0;
    if (item.contains("re")) re = parse_double(item.at("re"), path + ".re");
    if (item.contains("im")) im = parse_double(item.at("im"), path + ".im");
    out.set(n, {re, im});
    ++i;
  }
  return out;
}

SolverConfig parse_solver(const json& obj, const std::string& where, SolverConfig base) {
  if (!obj.is_object()) throw SchemaError(where, "expected an object");
  if (obj.contains("max_iters")) {
    base.max_iters = parse_int(obj.at("max_iters"), path_of(where, "max_iters"), 1, 1000000000);
  }
  if (obj.contains("step_rule")) {
    const auto& v = obj.at("step_rule");
    if (!v.is_string()) throw SchemaError(path_of(where, "step_rule"), "expected a string");
    const std::string s = v.get<std::string>();
    if (s == "fixed")
      base.step_rule = SolverConfig::StepRule::fixed;
    else if (s == "backtracking")
      base.step_rule = SolverConfig::StepRule::backtracking;
    else
      throw SchemaError(path_of(where, "step_rule"), "expected \"fixed\" or \"backtracking\"");
  }
  if (obj.contains("tol_gap")) {
    base.tol_gap = parse_double(obj.at("tol_gap"), path_of(where, "tol_gap"));
    if (!(base.tol_gap > 0)) throw SchemaError(path_of(where, "tol_gap"), "must be > 0");
  }
  if (obj.contains("tol_feas")) {
    base.tol_feas = parse_double(obj.at("tol_feas"), path_of(where, "tol_feas"));
    if (!(base.tol_feas > 0)) throw SchemaError(path_of(where, "tol_feas"), "must be > 0");
  }
  if (obj.contains("seed")) base.seed = parse_seed(obj.at("seed"), path_of(where, "seed"));
  if (obj.contains("fixed_step")) {
    base.fixed_step = parse_double(obj.at("fixed_step"), path_of(where, "fixed_step"));
    if (!(base.fixed_step > 0)) throw SchemaError(path_of(where, "fixed_step"), "must be > 0");
  }
  return base;
}

QuadratureConfig parse_quadrature(const json& obj, const std::string& where,
                                  QuadratureConfig base) {
  if (!obj.is_object()) throw SchemaError(where, "expected an object");
  if (obj.contains("base_grid")) {
    base.base_grid = static_cast<std::size_t>(
        parse_int(obj.at("base_grid"), path_of(where, "base_grid"), 2, 1000000000));
  }
  if (obj.contains("max_refinements")) {
    base.max_refinements =
        parse_int(obj.at("max_refinements"), path_of(where, "max_refinements"), 0, 64);
  }
  if (obj.contains("rel_tol")) {
    base.rel_tol = parse_double(obj.at("rel_tol"), path_of(where, "rel_tol"));
    if (!(base.rel_tol > 0)) throw SchemaError(path_of(where, "rel_tol"), "must be > 0");
  }
  return base;
}

json parse_document(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw SchemaError("(document)", "not valid JSON");
  if (!doc.is_object()) throw SchemaError("(document)", "top level must be an object");
  return doc;
}

// ---- serialization helpers ----------------------------------------------

void append_coefficients(std::string& out, const CoefficientSequence& seq,
                         const std::string& indent) {
  if (seq.empty()) {
    out += "[]";
    return;
  }
  out += "[\n";
  bool first = true;
  for (const auto& [n, v] : seq.entries()) {
    if (!first) out += ",\n";
    first = false;
    out += indent + "  {\"n\": " + std::to_string(n) + ", \"re\": " + format_float(v.real()) +
           ", \"im\": " + format_float(v.imag()) + "}";
  }
  out += "\n" + indent + "]";
}

void append_solver(std::string& out, const SolverConfig& s) {
  out += "{\"max_iters\": " + std::to_string(s.max_iters) + ", \"step_rule\": \"" +
         (s.step_rule == SolverConfig::StepRule::fixed ? "fixed" : "backtracking") +
         "\", \"tol_gap\": " + format_float(s.tol_gap) +
         ", \"tol_feas\": " + format_float(s.tol_feas) +
         ", \"seed\": " + std::to_string(s.seed) +
         ", \"fixed_step\": " + format_float(s.fixed_step) + "}";
}

void append_quadrature(std::string& out, const QuadratureConfig& q) {
  out += "{\"base_grid\": " + std::to_string(q.base_grid) +
         ", \"max_refinements\": " + std::to_string(q.max_refinements) +
         ", \"rel_tol\": " + format_float(q.rel_tol) + "}";
}

}  // namespace

// ---- public API -----------------------------------------------------------

ProblemFile parse_problem(const std::string& text) {
  const json doc = parse_document(text);
  ProblemFile p;
  p.j = parse_int(require(doc, "j", ""), "j", 1, 64);
  p.coefficients = parse_coefficients(require(doc, "coefficients", ""), "coefficients");
  if (p.coefficients.empty())
    throw SchemaError("coefficients", "at least one nonzero coefficient required");
  if (doc.contains("solver")) p.solver = parse_solver(doc.at("solver"), "solver", SolverConfig{});
  if (doc.contains("quadrature"))
    p.quadrature = parse_quadrature(doc.at("quadrature"), "quadrature", QuadratureConfig{});
  return p;
}

VerifyFile parse_verify(const std::string& text) {
  const json doc = parse_document(text);
  VerifyFile v;
  v.j = parse_int(require(doc, "j", ""), "j", 1, 64);
  v.f = parse_coefficients(require(doc, "f", ""), "f");
  if (v.f.empty()) throw SchemaError("f", "at least one nonzero coefficient required");
  v.H = parse_coefficients(require(doc, "H", ""), "H");
  if (doc.contains("F")) v.F = parse_coefficients(doc.at("F"), "F");
  if (doc.contains("quadrature"))
    v.quadrature = parse_quadrature(doc.at("quadrature"), "quadrature", QuadratureConfig{});
  return v;
}

std::string serialize_problem(const ProblemFile& p) {
  std::string out = "{\n  \"j\": " + std::to_string(p.j) + ",\n  \"coefficients\": ";
  append_coefficients(out, p.coefficients, "  ");
  if (p.solver) {
    out += ",\n  \"solver\": ";
    append_solver(out, *p.solver);
  }
  if (p.quadrature) {
    out += ",\n  \"quadrature\": ";
    append_quadrature(out, *p.quadrature);
  }
  out += "\n}\n";
  return out;
}

std::string serialize_report(const ReportFile& r) {
  const bool solve = r.command == "solve";
  std::string out = "{\n";
  out += "  \"tool\": \"" + json_escape(r.tool) + "\",\n";
  out += "  \"command\": \"" + json_escape(r.command) + "\",\n";
  out += "  \"input\": {\n    \"j\": " + std::to_string(r.j) + ",\n    \"coefficients\": ";
  append_coefficients(out, r.input_f, "    ");
  if (r.input_H) {
    out += ",\n    \"H\": ";
    append_coefficients(out, *r.input_H, "    ");
  }
  out += "\n  },\n";
  out += "  \"config\": {";
  if (solve) {
    out += "\"mode\": \"" + json_escape(r.mode) + "\", \"solver\": ";
    append_solver(out, r.solver);
    out += ", ";
  }
  out += "\"quadrature\": ";
  append_quadrature(out, r.quadrature);
  out += "},\n";
  if (r.K_p) out += "  \"K_p\": " + format_float(*r.K_p) + ",\n";
  out += "  \"G\": ";
  append_coefficients(out, r.G, "  ");
  out += ",\n  \"F\": ";
  append_coefficients(out, r.F, "  ");
  out += ",\n  \"norms\": {\"f_p\": " + format_float(r.norm_f_p) +
         ", \"F_p\": " + format_float(r.norm_F_p) + ", \"G_2j\": " + format_float(r.norm_G_2j) +
         "},\n";
  out += "  \"checks\": [";
  bool first = true;
  for (const auto& c : r.checks) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "    {\"name\": \"" + json_escape(c.name) + "\", \"pass\": " +
           (c.pass ? "true" : "false") + ", \"residual\": " + format_float(c.residual) +
           ", \"detail\": \"" + json_escape(c.detail) + "\"}";
  }
  out += first ? "]" : "\n  ]";
  if (r.diagnostics) {
    const auto& d = *r.diagnostics;
    out += ",\n  \"diagnostics\": {\n";
    out += "    \"dual_iterations\": " + std::to_string(d.dual_iterations) +
           ", \"dual_gap\": " + format_float(d.dual_gap) +
           ", \"dual_converged\": " + (d.dual_converged ? "true" : "false") + ",\n";
    out += "    \"primal_iterations\": " + std::to_string(d.primal_iterations) +
           ", \"primal_residual\": " + format_float(d.primal_residual) +
           ", \"primal_converged\": " + (d.primal_converged ? "true" : "false") + ",\n";
    out += "    \"primal_partial_iterations\": " + std::to_string(d.primal_partial_iterations) +
           ", \"primal_partial_residual\": " + format_float(d.primal_partial_residual) +
           ", \"primal_partial_converged\": " + (d.primal_partial_converged ? "true" : "false") +
           ",\n";
    out += "    \"cross_diff_dual_full\": " + format_float(d.cross_diff_dual_full) +
           ", \"cross_diff_partial_full\": " + format_float(d.cross_diff_partial_full) +
           ", \"cross_agree\": " + (d.cross_agree ? "true" : "false") + "\n  }";
  }
  out += "\n}\n";
  return out;
}

ReportFile parse_report(const std::string& text) {
  const json doc = parse_document(text);
  ReportFile r;
  const json& tool = require(doc, "tool", "");
  if (!tool.is_string()) throw SchemaError("tool", "expected a string");
  r.tool = tool.get<std::string>();
  const json& cmd = require(doc, "command", "");
  if (!cmd.is_string()) throw SchemaError("command", "expected a string");
  r.command = cmd.get<std::string>();

  const json& input = require(doc, "input", "");
  r.j = parse_int(require(input, "j", "input"), "input.j", 1, 64);
  r.input_f = parse_coefficients(require(input, "coefficients", "input"), "input.coefficients");
  if (input.contains("H")) r.input_H = parse_coefficients(input.at("H"), "input.H");

  const json& config = require(doc, "config", "");
  if (config.contains("mode")) {
    if (!config.at("mode").is_string()) throw SchemaError("config.mode", "expected a string");
    r.mode = config.at("mode").get<std::string>();
  }
  if (config.contains("solver"))
    r.solver = parse_solver(config.at("solver"), "config.solver", SolverConfig{});
  r.quadrature = parse_quadrature(require(config, "quadrature", "config"), "config.quadrature",
                                  QuadratureConfig{});

  if (doc.contains("K_p")) r.K_p = parse_double(doc.at("K_p"), "K_p");
  r.G = parse_coefficients(require(doc, "G", ""), "G");
  r.F = parse_coefficients(require(doc, "F", ""), "F");

  const json& norms = require(doc, "norms", "");
  r.norm_f_p = parse_double(require(norms, "f_p", "norms"), "norms.f_p");
  r.norm_F_p = parse_double(require(norms, "F_p", "norms"), "norms.F_p");
  r.norm_G_2j = parse_double(require(norms, "G_2j", "norms"), "norms.G_2j");

  const json& checks = require(doc, "checks", "");
  if (!checks.is_array()) throw SchemaError("checks", "expected an array");
  std::size_t i = 0;
  for (const auto& item : checks) {
    const std::string path = "checks[" + std::to_string(i) + "]";
    if (!item.is_object()) throw SchemaError(path, "expected an object");
    CheckResult c;
    const json& name = require(item, "name", path);
    if (!name.is_string()) throw SchemaError(path + ".name", "expected a string");
    c.name = name.get<std::string>();
    const json& pass = require(item, "pass", path);
    if (!pass.is_boolean()) throw SchemaError(path + ".pass", "expected a boolean");
    c.pass = pass.get<bool>();
    c.residual = parse_double(require(item, "residual", path), path + ".residual");
    const json& detail = require(item, "detail", path);
    if (!detail.is_string()) throw SchemaError(path + ".detail", "expected a string");
    c.detail = detail.get<std::string>();
    r.checks.push_back(std::move(c));
    ++i;
  }

  if (doc.contains("diagnostics")) {
    const json& dg = doc.at("diagnostics");
    SolveDiagnostics d;
    d.dual_iterations =
        parse_int(require(dg, "dual_iterations", "diagnostics"), "diagnostics.dual_iterations",
                  0, 1000000000);
    d.dual_gap = parse_double(require(dg, "dual_gap", "diagnostics"), "diagnostics.dual_gap");
    d.dual_converged = require(dg, "dual_converged", "diagnostics").get<bool>();
    d.primal_iterations = parse_int(require(dg, "primal_iterations", "diagnostics"),
                                    "diagnostics.primal_iterations", 0, 1000000000);
    d.primal_residual =
        parse_double(require(dg, "primal_residual", "diagnostics"), "diagnostics.primal_residual");
    d.primal_converged = require(dg, "primal_converged", "diagnostics").get<bool>();
    d.primal_partial_iterations = parse_int(require(dg, "primal_partial_iterations", "diagnostics"),
                                            "diagnostics.primal_partial_iterations", 0, 1000000000);
    d.primal_partial_residual = parse_double(require(dg, "primal_partial_residual", "diagnostics"),
                                             "diagnostics.primal_partial_residual");
    d.primal_partial_converged = require(dg, "primal_partial_converged", "diagnostics").get<bool>();
    d.cross_diff_dual_full = parse_double(require(dg, "cross_diff_dual_full", "diagnostics"),
                                          "diagnostics.cross_diff_dual_full");
    d.cross_diff_partial_full = parse_double(require(dg, "cross_diff_partial_full", "diagnostics"),
                                             "diagnostics.cross_diff_partial_full");
    d.cross_agree = require(dg, "cross_agree", "diagnostics").get<bool>();
    r.diagnostics = d;
  }
  return r;
}

bool looks_like_report(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  return doc.is_object() && doc.contains("tool");
}

}  // namespace majorant
