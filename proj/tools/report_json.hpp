#pragma once

#include <json.hpp>

#include "betacalc/inequalities.hpp"
#include "betacalc/suites.hpp"

namespace betacalc::cli {

/// Doubles are written as JSON numbers when finite and as the strings "nan",
/// "inf" and "-inf" otherwise, so that every report round-trips exactly.
nlohmann::json number_to_json(double v);
double number_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BoundParams& p);
nlohmann::json to_json(const ReportDiagnostics& d);
nlohmann::json to_json(const InequalityReport& r);
nlohmann::json to_json(const SuiteSummary& s);

BoundParams params_from_json(const nlohmann::json& j);
ReportDiagnostics diagnostics_from_json(const nlohmann::json& j);
InequalityReport report_from_json(const nlohmann::json& j);

}  // namespace betacalc::cli
