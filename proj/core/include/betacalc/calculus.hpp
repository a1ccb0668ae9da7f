#pragma once

#include <optional>

#include "betacalc/beta_map.hpp"
#include "betacalc/quadrature.hpp"

namespace betacalc {

struct DerivativeOptions {
  /// Classical derivative at s0 when known. Otherwise a central difference
  /// with step fd_step is used at the fixed point.
  std::optional<double> s0_derivative;
  double fd_step = 1e-6;
};

/// (f(beta(t)) - f(t)) / (beta(t) - t) away from s0; f'(s0) at the fixed point.
double beta_derivative(const BetaMap& map, const RealFn& f, double t,
                       const DerivativeOptions& opts = {});

/// D_beta[f] as a function, for use as an integrand.
RealFn beta_derivative_fn(const BetaMap& map, RealFn f, DerivativeOptions opts = {});

/// |D[f g](t) - (D[f](t) g(t) + f(beta(t)) D[g](t))|.
double product_rule_residual(const BetaMap& map, const RealFn& f, const RealFn& g, double t);

/// |D[f g](t) - (D[g](t) f(t) + g(beta(t)) D[f](t))|, the symmetric form.
double product_rule_residual_symmetric(const BetaMap& map, const RealFn& f, const RealFn& g,
                                       double t);

struct OneSidedLimits {
  double left = 0.0;   // f(s0-) read from the tail of the orbit of a
  double right = 0.0;  // f(s0+) read from the tail of the orbit of b
  bool converged = false;

  double jump() const noexcept { return right - left; }
};

/// Estimates f(s0-) and f(s0+) as f at the last orbit points of a and b.
/// Requires a < s0 < b for the reading to be meaningful; if a == s0 (b == s0)
/// the corresponding side is f(s0).
OneSidedLimits one_sided_limits(const BetaMap& map, const RealFn& f, double a, double b,
                                const TruncationConfig& cfg = {});

/// |integral of D[f] over [a, b] - (f(b) - f(a) - jump)|.
double ftc_residual(const BetaMap& map, const RealFn& f, double a, double b,
                    const TruncationConfig& cfg = {}, double jump = 0.0);

/// |integral f D[g] - ([f g]_a^b - integral (g o beta) D[f])|, for f and g
/// continuous at s0.
double ibp_residual(const BetaMap& map, const RealFn& f, const RealFn& g, double a, double b,
                    const TruncationConfig& cfg = {});

}  // namespace betacalc
