#pragma once

#include "betacalc/beta_map.hpp"
#include "betacalc/quadrature.hpp"

namespace betacalc {

/// Chebyshev functional T(f, g) = mean(f g) - mean(f) mean(g), every mean
/// being the beta-integral over [a, b] divided by (b - a).
struct ChebyshevResult {
  double t_fg = 0.0;
  double mean_f = 0.0;
  double mean_g = 0.0;
  double mean_fg = 0.0;
  IntegralResult diag_f;
  IntegralResult diag_g;
  IntegralResult diag_fg;

  bool converged() const noexcept {
    return diag_f.converged && diag_g.converged && diag_fg.converged;
  }
};

ChebyshevResult chebyshev(const BetaMap& map, const RealFn& f, const RealFn& g, double a,
                          double b, const TruncationConfig& cfg = {});

/// T(f, g) via the symmetrised double integral
///   1 / (2 (b - a)^2) * double integral of (f(x) - f(y)) (g(x) - g(y)).
/// Independent of chebyshev(): it never forms the single means.
double korkine(const BetaMap& map, const RealFn& f, const RealFn& g, double a, double b,
               const TruncationConfig& cfg = {});

/// T(f, f) T(g, g) - T(f, g)^2. Requires a <= s0 <= b.
double cauchy_schwarz_gap(const BetaMap& map, const RealFn& f, const RealFn& g, double a,
                          double b, const TruncationConfig& cfg = {});

}  // namespace betacalc
