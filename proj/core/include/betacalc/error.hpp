#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace betacalc {

enum class ErrorCode {
  parameter_out_of_range,
  validation_failed,
  no_fixed_point,
  syntax_error,
  unknown_identifier,
  order_violation,
  fixed_point_outside,
  hypothesis_violated,
  midpoint_not_fixed_point,
  tail_divergent,
};

std::string_view to_string(ErrorCode code) noexcept;

// Base for every error raised by the library. Callers that only need the
// category can switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t offset, std::vector<std::string> expected,
             const std::string& what)
      : Error(code, what), offset_(offset), expected_(std::move(expected)) {}

  /// Byte offset into the source text where parsing stopped.
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Raised when a custom map fails one of the sampled invariants.
class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, std::optional<double> witness,
                  const std::string& what)
      : Error(ErrorCode::validation_failed, what),
        invariant_(std::move(invariant)),
        witness_(witness) {}

  const std::string& invariant() const noexcept { return invariant_; }
  std::optional<double> witness() const noexcept { return witness_; }

 private:
  std::string invariant_;
  std::optional<double> witness_;
};

}  // namespace betacalc
