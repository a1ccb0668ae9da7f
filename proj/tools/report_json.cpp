#include "report_json.hpp"

#include <cmath>
#include <limits>

namespace betacalc::cli {

using nlohmann::json;

json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw json::type_error::create(302, "expected a number, got \"" + s + "\"", &j);
  }
  return j.get<double>();
}

namespace {

json optional_to_json(const std::optional<double>& v) {
  return v ? number_to_json(*v) : json(nullptr);
}

std::optional<double> optional_from_json(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return number_from_json(j.at(key));
}

}  // namespace

json to_json(const BoundParams& p) {
  return {{"m", number_to_json(p.m)},
          {"M", number_to_json(p.M)},
          {"n", optional_to_json(p.n)},
          {"N", optional_to_json(p.N)},
          {"L", optional_to_json(p.L)},
          {"sup_dbeta_u", optional_to_json(p.sup_dbeta_u)},
          {"source", std::string(to_string(p.source))}};
}

json to_json(const ReportDiagnostics& d) {
  return {{"converged", d.converged},
          {"nan_encountered", d.nan_encountered},
          {"tail_estimate", number_to_json(d.tail_estimate)}};
}

json to_json(const InequalityReport& r) {
  json witness = json::object();
  for (const auto& [k, v] : r.witness) witness[k] = number_to_json(v);
  return {{"name", r.name},
          {"lhs", number_to_json(r.lhs)},
          {"rhs", number_to_json(r.rhs)},
          {"slack", number_to_json(r.slack)},
          {"holds", r.holds},
          {"tol_report", number_to_json(r.tol_report)},
          {"params", to_json(r.params)},
          {"witness", witness},
          {"diagnostics", to_json(r.diagnostics)}};
}

json to_json(const SuiteSummary& s) {
  return {{"suite", s.suite},
          {"cases", s.cases},
          {"failures", s.failures},
          {"skipped", s.skipped},
          {"unconverged", s.unconverged},
          {"max_lhs", number_to_json(s.max_lhs)},
          {"worst_relative_slack", number_to_json(s.worst_relative_slack)},
          {"worst_case", s.worst_case}};
}

BoundParams params_from_json(const json& j) {
  BoundParams p;
  p.m = number_from_json(j.at("m"));
  p.M = number_from_json(j.at("M"));
  p.n = optional_from_json(j, "n");
  p.N = optional_from_json(j, "N");
  p.L = optional_from_json(j, "L");
  p.sup_dbeta_u = optional_from_json(j, "sup_dbeta_u");
  p.source = j.at("source").get<std::string>() == to_string(ParamSource::user_supplied)
                 ? ParamSource::user_supplied
                 : ParamSource::grid_estimated;
  return p;
}

ReportDiagnostics diagnostics_from_json(const json& j) {
  ReportDiagnostics d;
  d.converged = j.at("converged").get<bool>();
  d.nan_encountered = j.at("nan_encountered").get<bool>();
  d.tail_estimate = number_from_json(j.at("tail_estimate"));
  return d;
}

InequalityReport report_from_json(const json& j) {
  InequalityReport r;
  r.name = j.at("name").get<std::string>();
  r.lhs = number_from_json(j.at("lhs"));
  r.rhs = number_from_json(j.at("rhs"));
  r.slack = number_from_json(j.at("slack"));
  r.holds = j.at("holds").get<bool>();
  r.tol_report = number_from_json(j.at("tol_report"));
  r.params = params_from_json(j.at("params"));
  if (j.contains("witness")) {
    for (const auto& [k, v] : j.at("witness").items()) r.witness[k] = number_from_json(v);
  }
  r.diagnostics = diagnostics_from_json(j.at("diagnostics"));
  return r;
}

}  // namespace betacalc::cli
