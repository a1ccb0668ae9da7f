#include "betacalc/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "betacalc/error.hpp"
#include "betacalc/functionals.hpp"

namespace betacalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Grid points closer than this (relative to the map scale) to their image are
// skipped by the Lipschitz estimates: the quotient there is dominated by
// cancellation and its limit is already represented by the previous points.
constexpr double kMinWidth = 1e-9;
constexpr double kJumpTolerance = 1e-8;

void require_interior(const BetaMap& map, double a, double b) {
  if (!(a < map.s0() && map.s0() < b)) {
    throw Error(ErrorCode::fixed_point_outside,
                "fixed-point-outside: this bound requires a < s0 < b");
  }
}

double require(const std::optional<double>& v, const char* name) {
  if (!v) {
    throw Error(ErrorCode::parameter_out_of_range,
                std::string("parameter-out-of-range: missing bound parameter ") + name);
  }
  return *v;
}

[[noreturn]] void hypothesis(const std::string& clause) {
  throw Error(ErrorCode::hypothesis_violated, "hypothesis-violated: " + clause);
}

double integrate(const BetaMap& map, const RealFn& f, double a, double b,
                 const TruncationConfig& cfg, ReportDiagnostics& diag) {
  const IntegralResult r = integral(map, f, a, b, cfg);
  diag.absorb(r);
  return r.value;
}

void absorb_chebyshev(ReportDiagnostics& d, const ChebyshevResult& c) {
  d.absorb(c.diag_f);
  d.absorb(c.diag_g);
  d.absorb(c.diag_fg);
}

// Visits every orbit point x of a and b with beta(x) != x and a width that is
// not lost to cancellation.
template <class Visit>
void for_each_grid_step(const BetaMap& map, double a, double b, const TruncationConfig& cfg,
                        Visit&& visit) {
  const double min_width = kMinWidth * map.scale();
  for (double start : {a, b}) {
    const Orbit o = orbit(map, start, cfg.gap_tol, cfg.k_max);
    for (double x : o.points) {
      const double bx = map(x);
      if (x == map.s0() || bx == x || std::fabs(x - bx) < min_width) continue;
      visit(x, bx);
    }
  }
}

struct TailReading {
  double value = 0.0;
  bool settled = false;
};

TailReading read_tail(const BetaMap& map, const RealFn& u, double x, const TruncationConfig& cfg) {
  const Orbit o = orbit(map, x, cfg.gap_tol, cfg.k_max);
  TailReading t;
  t.value = u(o.points.back());
  if (!o.converged || !std::isfinite(t.value)) return t;
  if (o.points.size() < 2) {
    t.settled = true;
    return t;
  }
  const double prev = u(o.points[o.points.size() - 2]);
  t.settled = std::fabs(t.value - prev) <= kJumpTolerance * (1.0 + std::fabs(t.value));
  return t;
}

}  // namespace

std::string_view to_string(ParamSource source) noexcept {
  return source == ParamSource::user_supplied ? "user-supplied" : "grid-estimated";
}

void BoundParams::validate() const {
  if (!(m <= M)) {
    throw Error(ErrorCode::parameter_out_of_range, "parameter-out-of-range: m > M");
  }
  if (n && N && !(*n <= *N)) {
    throw Error(ErrorCode::parameter_out_of_range, "parameter-out-of-range: n > N");
  }
  if (L && !(*L >= 0.0)) {
    throw Error(ErrorCode::parameter_out_of_range, "parameter-out-of-range: L < 0");
  }
}

void ReportDiagnostics::absorb(const IntegralResult& r) {
  converged = converged && r.converged;
  nan_encountered = nan_encountered || r.nan_encountered;
  tail_estimate = std::max(tail_estimate, r.tail_estimate);
}

double default_report_tolerance(double rhs) noexcept { return 1e-8 * (1.0 + std::fabs(rhs)); }

InequalityReport make_report(std::string name, double lhs, double rhs, BoundParams params,
                             std::optional<double> tol) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.tol_report = tol.value_or(default_report_tolerance(rhs));
  r.holds = r.slack >= -r.tol_report;
  r.params = std::move(params);
  return r;
}

BoundParams grid_bounds(const BetaMap& map, const RealFn& f, double a, double b,
                        const TruncationConfig& cfg, GridBoundsOptions opts) {
  require_ordered(a, b);
  BoundParams p;
  p.source = ParamSource::grid_estimated;
  p.m = kInf;
  p.M = -kInf;
  const auto visit = [&](double v) {
    if (std::isnan(v)) {
      p.m = p.M = std::numeric_limits<double>::quiet_NaN();
      return false;
    }
    p.m = std::min(p.m, v);
    p.M = std::max(p.M, v);
    return true;
  };
  for (double start : {a, b}) {
    const Orbit o = orbit(map, start, cfg.gap_tol, cfg.k_max);
    for (double x : o.points) {
      if (!visit(f(x))) return p;
    }
  }
  // The orbit tails already supply the one-sided values at s0, so dropping
  // f(s0) is all the discontinuous case needs.
  if (!opts.discontinuous_at_s0) visit(f(map.s0()));
  return p;
}

BoundParams grid_bounds_pair(const BetaMap& map, const RealFn& f, const RealFn& g, double a,
                             double b, const TruncationConfig& cfg) {
  BoundParams p = grid_bounds(map, f, a, b, cfg);
  const BoundParams q = grid_bounds(map, g, a, b, cfg);
  p.n = q.m;
  p.N = q.M;
  return p;
}

InequalityReport gruss_check(const BetaMap& map, const RealFn& f, const RealFn& g, double a,
                             double b, const BoundParams& params, const TruncationConfig& cfg) {
  require_ordered(a, b);
  require_interior(map, a, b);
  params.validate();
  const double n = require(params.n, "n");
  const double N = require(params.N, "N");
  const ChebyshevResult c = chebyshev(map, f, g, a, b, cfg);
  auto r = make_report("gruss", std::fabs(c.t_fg), 0.25 * (params.M - params.m) * (N - n), params);
  absorb_chebyshev(r.diagnostics, c);
  r.witness["t_fg"] = c.t_fg;
  return r;
}

namespace {

// T(g, g) from g shifted by its mean, so constant g gives 0 instead of rounding
// noise that the square root would inflate.
ChebyshevResult centred_self(const BetaMap& map, const RealFn& g, double mean_g, double a,
                             double b, const TruncationConfig& cfg) {
  const RealFn shifted = [&g, mean_g](double t) { return g(t) - mean_g; };
  return chebyshev(map, shifted, shifted, a, b, cfg);
}

}  // namespace

std::pair<InequalityReport, InequalityReport> pre_gruss_check(
    const BetaMap& map, const RealFn& f, const RealFn& g, double a, double b,
    const BoundParams& params, const TruncationConfig& cfg) {
  require_ordered(a, b);
  require_fixed_point_inside(map, a, b);
  params.validate();
  const double width = b - a;
  const ChebyshevResult c = chebyshev(map, f, g, a, b, cfg);
  const double mean_g = c.mean_g;
  const ChebyshevResult cg = centred_self(map, g, mean_g, a, b, cfg);

  ReportDiagnostics diag;
  absorb_chebyshev(diag, c);
  absorb_chebyshev(diag, cg);
  const RealFn deviation = [&](double t) { return std::fabs(g(t) - mean_g); };
  const double mean_abs_dev = integrate(map, deviation, a, b, cfg, diag) / width;

  const double half_range = 0.5 * (params.M - params.m);
  const double middle = half_range * mean_abs_dev;
  const double outer = half_range * std::sqrt(std::max(cg.t_fg, 0.0));

  double centre_sup = 0.0;
  const double centre = 0.5 * (params.M + params.m);
  for (double t : grid_points(map, a, b, cfg)) {
    centre_sup = std::max(centre_sup, std::fabs(f(t) - centre));
  }

  auto first = make_report("pre-gruss:first", std::fabs(c.t_fg), middle, params);
  first.diagnostics = diag;
  first.witness["t_fg"] = c.t_fg;
  first.witness["mean_abs_deviation_g"] = mean_abs_dev;
  first.witness["centered_bound"] = centre_sup * mean_abs_dev;

  auto second = make_report("pre-gruss:second", middle, outer, params);
  second.diagnostics = diag;
  second.witness["t_gg"] = cg.t_fg;
  return {first, second};
}

InequalityReport functional_bound_check(const BetaMap& map, const RealFn& f, const RealFn& g,
                                        double a, double b, const BoundParams& params,
                                        const TruncationConfig& cfg) {
  require_ordered(a, b);
  require_interior(map, a, b);
  params.validate();
  const ChebyshevResult c = chebyshev(map, f, g, a, b, cfg);
  const ChebyshevResult cg = centred_self(map, g, c.mean_g, a, b, cfg);
  const double rhs = 0.5 * (params.M - params.m) * std::sqrt(std::max(cg.t_fg, 0.0));
  auto r = make_report("functional-bound", std::fabs(c.t_fg), rhs, params);
  absorb_chebyshev(r.diagnostics, c);
  absorb_chebyshev(r.diagnostics, cg);
  r.witness["t_fg"] = c.t_fg;
  r.witness["t_gg"] = cg.t_fg;
  return r;
}

InequalityReport holder_check(const BetaMap& map, const RealFn& f, const RealFn& g, double a,
                              double b, double p, const TruncationConfig& cfg) {
  require_ordered(a, b);
  require_fixed_point_inside(map, a, b);
  if (!(p >= 1.0) || std::isinf(p)) {
    throw Error(ErrorCode::parameter_out_of_range,
                "parameter-out-of-range: Hoelder exponent must satisfy 1 <= p < inf");
  }
  ReportDiagnostics diag;
  const RealFn abs_fg = [&](double t) { return std::fabs(f(t) * g(t)); };
  const double lhs = integrate(map, abs_fg, a, b, cfg, diag);
  double rhs = 0.0;
  BoundParams params;
  params.source = ParamSource::grid_estimated;
  if (p == 1.0) {
    const RealFn abs_f = [&](double t) { return std::fabs(f(t)); };
    const double sup_g = lp_norm(map, g, a, b, kInf, cfg);
    rhs = sup_g * integrate(map, abs_f, a, b, cfg, diag);
  } else {
    const double conj = p / (p - 1.0);
    rhs = lp_norm(map, f, a, b, p, cfg) * lp_norm(map, g, a, b, conj, cfg);
  }
  auto r = make_report("holder", lhs, rhs, params);
  r.diagnostics = diag;
  r.witness["p"] = p;
  return r;
}

double beta_lipschitz_estimate(const BetaMap& map, const RealFn& u, double a, double b,
                               const TruncationConfig& cfg) {
  require_ordered(a, b);
  double L = 0.0;
  for_each_grid_step(map, a, b, cfg, [&](double x, double bx) {
    const double quotient = std::fabs(u(x) - u(bx)) / std::fabs(x - bx);
    L = std::isfinite(quotient) ? std::max(L, quotient) : kInf;
  });
  return L;
}

double dbeta_sup_norm(const BetaMap& map, const RealFn& u, double a, double b,
                      const TruncationConfig& cfg, const DerivativeOptions& opts) {
  double sup = beta_lipschitz_estimate(map, u, a, b, cfg);
  if (a <= map.s0() && map.s0() <= b) {
    const double at_s0 = std::fabs(beta_derivative(map, u, map.s0(), opts));
    sup = std::isfinite(at_s0) ? std::max(sup, at_s0) : kInf;
  }
  return sup;
}

double grid_lipschitz_estimate(const BetaMap& map, const RealFn& u, double a, double b,
                               const TruncationConfig& cfg) {
  require_ordered(a, b);
  const std::vector<double> pts = grid_points(map, a, b, cfg);
  std::vector<double> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = u(pts[i]);
  const double min_width = kMinWidth * map.scale();
  double L = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dx = std::fabs(pts[i] - pts[j]);
      if (dx < min_width) continue;
      const double quotient = std::fabs(vals[i] - vals[j]) / dx;
      if (!std::isfinite(quotient)) return kInf;
      L = std::max(L, quotient);
    }
  }
  return L;
}

RsIntegralResult rs_integral(const BetaMap& map, const RealFn& f, const RealFn& u, double a,
                             double b, const TruncationConfig& cfg) {
  require_ordered(a, b);
  const SeriesTerm term = [&](double t, double bt) { return f(t) * (u(t) - u(bt)); };
  const SeriesSum at_b = sum_orbit_series(map, b, cfg, term);
  const SeriesSum at_a = sum_orbit_series(map, a, cfg, term);
  RsIntegralResult r;
  r.diagnostics = combine_branches(at_a, at_b);
  r.value = r.diagnostics.value;
  const TailReading right = read_tail(map, u, b, cfg);
  const TailReading left = read_tail(map, u, a, cfg);
  r.jump_s0 = right.value - left.value;
  r.tails_settled = right.settled && left.settled;
  return r;
}

double rs_identity_residual(const BetaMap& map, const RealFn& f, const RealFn& u, double a,
                            double b, const TruncationConfig& cfg) {
  const RsIntegralResult rs = rs_integral(map, f, u, a, b, cfg);
  const RealFn du = beta_derivative_fn(map, u);
  const RealFn integrand = [&](double t) { return f(t) * du(t); };
  return std::fabs(rs.value - integral(map, integrand, a, b, cfg).value);
}

InequalityReport rs_abs_bound_check(const BetaMap& map, const RealFn& f, const RealFn& u,
                                    double a, double b, double L, const TruncationConfig& cfg) {
  require_ordered(a, b);
  require_fixed_point_inside(map, a, b);
  BoundParams params;
  params.L = L;
  params.source = ParamSource::user_supplied;
  params.validate();
  const RsIntegralResult rs = rs_integral(map, f, u, a, b, cfg);
  ReportDiagnostics diag;
  diag.absorb(rs.diagnostics);
  const RealFn abs_f = [&](double t) { return std::fabs(f(t)); };
  const double rhs = L * integrate(map, abs_f, a, b, cfg, diag);
  auto r = make_report("rs-abs-bound", std::fabs(rs.value), rhs, params);
  r.diagnostics = diag;
  r.witness["rs_value"] = rs.value;
  return r;
}

namespace {

struct RsGrussParts {
  RsIntegralResult rs;
  double integral_f = 0.0;
  ReportDiagnostics diag;
};

RsGrussParts rs_gruss_parts(const BetaMap& map, const RealFn& f, const RealFn& u, double a,
                            double b, const TruncationConfig& cfg) {
  RsGrussParts parts;
  parts.rs = rs_integral(map, f, u, a, b, cfg);
  parts.diag.absorb(parts.rs.diagnostics);
  parts.integral_f = integrate(map, f, a, b, cfg, parts.diag);
  return parts;
}

double rs_deviation(const RsGrussParts& p, const RealFn& u, double a, double b, double jump) {
  return std::fabs(p.rs.value - (u(b) - u(a) - jump) / (b - a) * p.integral_f);
}

}  // namespace

InequalityReport rs_gruss_check(const BetaMap& map, const RealFn& f, const RealFn& u,
                                double a, double b, const BoundParams& params,
                                const TruncationConfig& cfg, RsGrussOptions opts) {
  require_ordered(a, b);
  if (opts.allow_boundary_fixed_point) {
    require_fixed_point_inside(map, a, b);
  } else {
    require_interior(map, a, b);
  }
  params.validate();
  const double L = require(params.L, "L");
  const RsGrussParts parts = rs_gruss_parts(map, f, u, a, b, cfg);
  if (!parts.rs.tails_settled) {
    throw Error(ErrorCode::tail_divergent,
                "tail-divergent: u does not settle along the orbits of a and b");
  }
  const double lhs = rs_deviation(parts, u, a, b, parts.rs.jump_s0);
  const double rhs = 0.5 * L * (params.M - params.m) * (b - a);
  auto r = make_report("rs-gruss", lhs, rhs, params);
  r.diagnostics = parts.diag;
  r.witness["jump_s0"] = parts.rs.jump_s0;
  r.witness["rs_value"] = parts.rs.value;
  r.witness["integral_f"] = parts.integral_f;
  return r;
}

std::string_view to_string(RsVariant v) noexcept {
  switch (v) {
    case RsVariant::continuous_u: return "continuous-u";
    case RsVariant::lipschitz_grid: return "lipschitz-grid";
    case RsVariant::dbeta_sup: return "dbeta-sup";
    case RsVariant::nonneg_weight: return "nonneg-weight";
    case RsVariant::trapezoid: return "trapezoid";
  }
  return "?";
}

std::optional<RsVariant> parse_rs_variant(std::string_view name) noexcept {
  for (RsVariant v : {RsVariant::continuous_u, RsVariant::lipschitz_grid, RsVariant::dbeta_sup,
                      RsVariant::nonneg_weight, RsVariant::trapezoid}) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

InequalityReport rs_gruss_variant_check(const BetaMap& map, const RealFn& f, const RealFn& u,
                                        double a, double b, RsVariant variant,
                                        const TruncationConfig& cfg,
                                        std::optional<BoundParams> params) {
  require_ordered(a, b);
  BoundParams p = params ? *params : grid_bounds(map, f, a, b, cfg);
  p.validate();
  const double width = b - a;
  const double range = p.M - p.m;
  const std::string name = "rs-variant:" + std::string(to_string(variant));

  switch (variant) {
    case RsVariant::continuous_u:
    case RsVariant::dbeta_sup: {
      require_interior(map, a, b);
      const RsGrussParts parts = rs_gruss_parts(map, f, u, a, b, cfg);
      if (!parts.rs.tails_settled) {
        throw Error(ErrorCode::tail_divergent,
                    "tail-divergent: u does not settle along the orbits of a and b");
      }
      double L = 0.0;
      double jump = parts.rs.jump_s0;
      if (variant == RsVariant::continuous_u) {
        if (std::fabs(jump) > kJumpTolerance) hypothesis("u(s0+) = u(s0-)");
        jump = 0.0;
        L = p.L.value_or(beta_lipschitz_estimate(map, u, a, b, cfg));
        p.L = L;
      } else {
        L = p.sup_dbeta_u.value_or(dbeta_sup_norm(map, u, a, b, cfg));
        p.sup_dbeta_u = L;
      }
      if (!std::isfinite(L)) hypothesis("D_beta u bounded on the grid");
      auto r = make_report(name, rs_deviation(parts, u, a, b, jump), 0.5 * L * range * width, p);
      r.diagnostics = parts.diag;
      r.witness["jump_s0"] = parts.rs.jump_s0;
      return r;
    }
    case RsVariant::lipschitz_grid: {
      require_fixed_point_inside(map, a, b);
      const RsGrussParts parts = rs_gruss_parts(map, f, u, a, b, cfg);
      const double L = p.L.value_or(grid_lipschitz_estimate(map, u, a, b, cfg));
      if (!std::isfinite(L)) hypothesis("u L-Lipschitz on the grid");
      p.L = L;
      auto r = make_report(name, rs_deviation(parts, u, a, b, 0.0), 0.5 * L * range * width, p);
      r.diagnostics = parts.diag;
      return r;
    }
    case RsVariant::nonneg_weight: {
      require_fixed_point_inside(map, a, b);
      const BoundParams gb = grid_bounds(map, u, a, b, cfg);
      if (!(gb.m >= 0.0)) hypothesis("g >= 0 on [a, b]");
      const OneSidedLimits lim = one_sided_limits(map, u, a, b, cfg);
      if (std::fabs(lim.jump()) > kJumpTolerance) hypothesis("g continuous at s0");
      ReportDiagnostics diag;
      const RealFn fg = [&](double t) { return f(t) * u(t); };
      const double int_fg = integrate(map, fg, a, b, cfg, diag);
      const double int_f = integrate(map, f, a, b, cfg, diag);
      const double int_g = integrate(map, u, a, b, cfg, diag);
      const double sup_g = std::max(std::fabs(gb.m), std::fabs(gb.M));
      auto r = make_report(name, std::fabs(int_fg - int_g / width * int_f),
                           0.5 * sup_g * range * width, p);
      r.diagnostics = diag;
      r.witness["sup_g"] = sup_g;
      return r;
    }
    case RsVariant::trapezoid: {
      require_fixed_point_inside(map, a, b);
      const double fa = f(a);
      const double fb = f(b);
      if (fa == fb) hypothesis("f(a) != f(b)");
      const double sup_df = dbeta_sup_norm(map, f, a, b, cfg);
      if (!std::isfinite(sup_df)) hypothesis("D_beta f bounded on the grid");
      ReportDiagnostics diag;
      const RealFn avg = [&](double t) { return 0.5 * (f(t) + f(map(t))); };
      const double mean_avg = integrate(map, avg, a, b, cfg, diag) / width;
      p.sup_dbeta_u = sup_df;
      auto r = make_report(name, std::fabs(0.5 * (fa + fb) - mean_avg),
                           0.5 * sup_df / std::fabs(fb - fa) * range * width, p);
      r.diagnostics = diag;
      return r;
    }
  }
  hypothesis("unknown variant");
}

std::pair<InequalityReport, InequalityReport> sharpness_demo(const BetaMap& map, double a,
                                                             double b,
                                                             const TruncationConfig& cfg) {
  require_ordered(a, b);
  const double mid = 0.5 * (a + b);
  if (!(std::fabs(map.s0() - mid) <= 1e-12 * map.scale())) {
    throw Error(ErrorCode::midpoint_not_fixed_point,
                "midpoint-not-fixed-point: the extremal pair needs s0 = (a + b)/2");
  }
  const RealFn u = [mid](double x) { return std::fabs(x - mid); };
  const RealFn f = [mid](double x) {
    const double d = x - mid;
    return d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
  };
  BoundParams rs_params = grid_bounds(map, f, a, b, cfg);
  rs_params.L = beta_lipschitz_estimate(map, u, a, b, cfg);
  auto rs = rs_gruss_check(map, f, u, a, b, rs_params, cfg);
  rs.name = "sharpness:rs-gruss";

  const BoundParams g_params = grid_bounds_pair(map, f, f, a, b, cfg);
  auto gr = gruss_check(map, f, f, a, b, g_params, cfg);
  gr.name = "sharpness:gruss";
  return {rs, gr};
}

}  // namespace betacalc
