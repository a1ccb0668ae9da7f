#include "betacalc/functionals.hpp"

namespace betacalc {

ChebyshevResult chebyshev(const BetaMap& map, const RealFn& f, const RealFn& g, double a,
                          double b, const TruncationConfig& cfg) {
  require_ordered(a, b);
  ChebyshevResult r;
  const RealFn fg = [&](double t) { return f(t) * g(t); };
  r.diag_f = integral(map, f, a, b, cfg);
  r.diag_g = integral(map, g, a, b, cfg);
  r.diag_fg = integral(map, fg, a, b, cfg);
  const double width = b - a;
  r.mean_f = r.diag_f.value / width;
  r.mean_g = r.diag_g.value / width;
  r.mean_fg = r.diag_fg.value / width;
  r.t_fg = r.mean_fg - r.mean_f * r.mean_g;
  return r;
}

double korkine(const BetaMap& map, const RealFn& f, const RealFn& g, double a, double b,
               const TruncationConfig& cfg) {
  require_ordered(a, b);
  const RealFn2 kernel = [&](double x, double y) { return (f(x) - f(y)) * (g(x) - g(y)); };
  const IntegralResult r = double_integral(map, kernel, a, b, cfg);
  const double width = b - a;
  return r.value / (2.0 * width * width);
}

double cauchy_schwarz_gap(const BetaMap& map, const RealFn& f, const RealFn& g, double a,
                          double b, const TruncationConfig& cfg) {
  require_fixed_point_inside(map, a, b);
  const double tff = chebyshev(map, f, f, a, b, cfg).t_fg;
  const double tgg = chebyshev(map, g, g, a, b, cfg).t_fg;
  const double tfg = chebyshev(map, f, g, a, b, cfg).t_fg;
  return tff * tgg - tfg * tfg;
}

}  // namespace betacalc
