#include "betacalc/calculus.hpp"

#include <cmath>

namespace betacalc {

double beta_derivative(const BetaMap& map, const RealFn& f, double t,
                       const DerivativeOptions& opts) {
  const double bt = map(t);
  if (bt != t && t != map.s0()) return (f(bt) - f(t)) / (bt - t);
  if (opts.s0_derivative) return *opts.s0_derivative;
  const double h = opts.fd_step;
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

RealFn beta_derivative_fn(const BetaMap& map, RealFn f, DerivativeOptions opts) {
  return [map, f = std::move(f), opts = std::move(opts)](double t) {
    return beta_derivative(map, f, t, opts);
  };
}

double product_rule_residual(const BetaMap& map, const RealFn& f, const RealFn& g, double t) {
  const RealFn fg = [&](double s) { return f(s) * g(s); };
  const double lhs = beta_derivative(map, fg, t);
  const double rhs = beta_derivative(map, f, t) * g(t) + f(map(t)) * beta_derivative(map, g, t);
  return std::fabs(lhs - rhs);
}

double product_rule_residual_symmetric(const BetaMap& map, const RealFn& f, const RealFn& g,
                                       double t) {
  const RealFn fg = [&](double s) { return f(s) * g(s); };
  const double lhs = beta_derivative(map, fg, t);
  const double rhs = beta_derivative(map, g, t) * f(t) + g(map(t)) * beta_derivative(map, f, t);
  return std::fabs(lhs - rhs);
}

OneSidedLimits one_sided_limits(const BetaMap& map, const RealFn& f, double a, double b,
                                const TruncationConfig& cfg) {
  OneSidedLimits out;
  const Orbit oa = orbit(map, a, cfg.gap_tol, cfg.k_max);
  const Orbit ob = orbit(map, b, cfg.gap_tol, cfg.k_max);
  out.left = f(oa.points.back());
  out.right = f(ob.points.back());
  out.converged = oa.converged && ob.converged;
  return out;
}

double ftc_residual(const BetaMap& map, const RealFn& f, double a, double b,
                    const TruncationConfig& cfg, double jump) {
  require_ordered(a, b);
  const RealFn df = beta_derivative_fn(map, f);
  const IntegralResult r = integral(map, df, a, b, cfg);
  return std::fabs(r.value - (f(b) - f(a) - jump));
}

double ibp_residual(const BetaMap& map, const RealFn& f, const RealFn& g, double a, double b,
                    const TruncationConfig& cfg) {
  require_ordered(a, b);
  const RealFn df = beta_derivative_fn(map, f);
  const RealFn dg = beta_derivative_fn(map, g);
  const RealFn lhs_integrand = [&](double t) { return f(t) * dg(t); };
  const RealFn rhs_integrand = [&](double t) { return g(map(t)) * df(t); };
  const double lhs = integral(map, lhs_integrand, a, b, cfg).value;
  const double boundary = f(b) * g(b) - f(a) * g(a);
  const double rhs = boundary - integral(map, rhs_integrand, a, b, cfg).value;
  return std::fabs(lhs - rhs);
}

}  // namespace betacalc
