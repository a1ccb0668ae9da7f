#include "betacalc/error.hpp"

namespace betacalc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parameter_out_of_range: return "parameter-out-of-range";
    case ErrorCode::validation_failed: return "validation-failed";
    case ErrorCode::no_fixed_point: return "no-fixed-point";
    case ErrorCode::syntax_error: return "syntax-error";
    case ErrorCode::unknown_identifier: return "unknown-identifier";
    case ErrorCode::order_violation: return "order-violation";
    case ErrorCode::fixed_point_outside: return "fixed-point-outside";
    case ErrorCode::hypothesis_violated: return "hypothesis-violated";
    case ErrorCode::midpoint_not_fixed_point: return "midpoint-not-fixed-point";
    case ErrorCode::tail_divergent: return "tail-divergent";
  }
  return "unknown";
}

}  // namespace betacalc
