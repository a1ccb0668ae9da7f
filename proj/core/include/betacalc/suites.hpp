#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "betacalc/inequalities.hpp"
#include "betacalc/quadrature.hpp"

namespace betacalc {

enum class Suite {
  telescoping,
  gruss,
  pre_gruss,
  functional,
  cauchy_schwarz,
  holder,
  korkine,
  ftc,
  ibp,
  rs_identity,
  rs_gruss,
  rs_variants,
  sharpness,
  prob,
};

/// Command-line names: "gruss", "pre-gruss", "cs", "rs-gruss", ...
std::string_view to_string(Suite s) noexcept;
std::optional<Suite> parse_suite(std::string_view name) noexcept;
const std::vector<Suite>& all_suites();

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t cases = 100;
  /// Worker threads; results are merged by case index, so the output does
  /// not depend on this value. 0 picks the hardware concurrency.
  std::size_t threads = 1;
  TruncationConfig cfg;
};

struct CaseOutcome {
  std::size_t index = 0;
  std::string description;
  std::vector<InequalityReport> reports;
  std::optional<std::string> error;  // case skipped: a hypothesis did not apply
};

struct SuiteSummary {
  std::string suite;
  std::size_t cases = 0;
  std::size_t failures = 0;     // reports with holds == false
  std::size_t skipped = 0;      // cases that raised an error
  std::size_t unconverged = 0;  // reports whose series did not converge
  double max_lhs = 0.0;         // for residual suites, the largest residual
  double worst_relative_slack = 0.0;  // min slack / (1 + |rhs|)
  std::size_t worst_case = 0;
  std::vector<CaseOutcome> outcomes;

  bool all_hold() const noexcept { return failures == 0; }
  std::vector<InequalityReport> reports() const;
};

/// Runs one randomized case; deterministic in (suite, seed, index).
CaseOutcome run_case(Suite suite, std::uint64_t seed, std::size_t index,
                     const TruncationConfig& cfg = {});

SuiteSummary run_suite(Suite suite, const SuiteOptions& opts);

/// Residual report: holds iff residual <= allowed, with no extra tolerance.
InequalityReport residual_report(std::string name, double residual, double allowed);

}  // namespace betacalc
