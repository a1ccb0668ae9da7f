#include "betacalc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "betacalc/error.hpp"

namespace betacalc {

namespace {

constexpr double kMaxRatio = 0.999;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double geometric_tail(double last, double prev) {
  if (last == 0.0 || prev == 0.0) return 0.0;
  const double r = std::clamp(last / prev, 0.0, kMaxRatio);
  return last * r / (1.0 - r);
}

}  // namespace

void TruncationConfig::validate() const {
  if (!(term_tol > 0.0) || !(gap_tol > 0.0) || consecutive_small < 1 || k_max < 1) {
    throw Error(ErrorCode::parameter_out_of_range,
                "parameter-out-of-range: truncation tolerances and counts must be positive");
  }
}

void require_ordered(double a, double b) {
  if (!(a < b)) {
    throw Error(ErrorCode::order_violation,
                "order-violation: integration bounds must satisfy a < b");
  }
}

void require_fixed_point_inside(const BetaMap& map, double a, double b) {
  if (!(a <= map.s0() && map.s0() <= b)) {
    throw Error(ErrorCode::fixed_point_outside,
                "fixed-point-outside: s0 = " + std::to_string(map.s0()) +
                    " is not inside [a, b]");
  }
}

SeriesSum sum_orbit_series(const BetaMap& map, double x, const TruncationConfig& cfg,
                           const SeriesTerm& term, const SeriesObserver* observer) {
  cfg.validate();
  if (!map.domain().contains(x)) {
    throw Error(ErrorCode::parameter_out_of_range,
                "parameter-out-of-range: point outside the map domain");
  }
  SeriesSum out;
  const double s0 = map.s0();
  const double gap_tol = cfg.gap_tol * map.scale();
  double t = x;
  double sum = 0.0;
  std::size_t small = 0;
  double last_mag = 0.0;
  double prev_mag = 0.0;
  double last_width = 0.0;
  double last_abs_term = 0.0;

  if (t == s0) {
    out.converged = true;
    out.last_point = t;
    return out;
  }

  std::size_t k = 0;
  for (; k < cfg.k_max; ++k) {
    const double next = map(t);
    if (next == t) {
      // Floating-point stall next to s0: every further weight is zero. The
      // remaining span |t - s0| is what is left of the exact series.
      const double gap = std::fabs(t - s0);
      const double density = last_width > 0.0 ? last_abs_term / last_width : 0.0;
      out.tail_estimate = density * gap;
      out.converged = out.tail_estimate <= 10.0 * cfg.term_tol;
      break;
    }
    const double value = term(t, next);
    if (std::isnan(value)) {
      out.nan_encountered = true;
      out.value = kNaN;
      out.terms = k + 1;
      out.last_point = t;
      out.converged = false;
      out.tail_estimate = std::numeric_limits<double>::infinity();
      return out;
    }
    sum += value;
    if (observer) (*observer)(k, t, value);

    const double mag = std::fabs(value);
    if (mag != 0.0) {
      prev_mag = last_mag;
      last_mag = mag;
    }
    last_abs_term = mag;
    last_width = std::fabs(t - next);
    small = mag < cfg.term_tol ? small + 1 : 0;
    t = next;

    if (small >= cfg.consecutive_small && std::fabs(t - s0) <= gap_tol) {
      const double tail = geometric_tail(last_mag, prev_mag);
      if (tail <= 10.0 * cfg.term_tol) {
        out.tail_estimate = tail;
        out.converged = true;
        ++k;
        break;
      }
    }
  }
  if (k >= cfg.k_max && !out.converged) {
    out.tail_estimate = geometric_tail(last_mag, prev_mag);
  }
  out.terms = std::min(k, cfg.k_max);
  out.value = sum;
  out.last_point = t;
  return out;
}

IntegralResult combine_branches(const SeriesSum& at_a, const SeriesSum& at_b) {
  IntegralResult r;
  r.value = at_b.value - at_a.value;
  r.terms_a = at_a.terms;
  r.terms_b = at_b.terms;
  r.tail_estimate = std::max(at_a.tail_estimate, at_b.tail_estimate);
  r.converged = at_a.converged && at_b.converged;
  r.nan_encountered = at_a.nan_encountered || at_b.nan_encountered;
  if (r.nan_encountered) r.value = kNaN;
  return r;
}

namespace {

SeriesTerm weighted(const RealFn& f) {
  return [&f](double t, double bt) { return (t - bt) * f(t); };
}

}  // namespace

IntegralResult integral_from_s0(const BetaMap& map, const RealFn& f, double x,
                                const TruncationConfig& cfg) {
  const SeriesSum s = sum_orbit_series(map, x, cfg, weighted(f));
  IntegralResult r;
  r.value = s.value;
  (x < map.s0() ? r.terms_a : r.terms_b) = s.terms;
  r.tail_estimate = s.tail_estimate;
  r.converged = s.converged;
  r.nan_encountered = s.nan_encountered;
  return r;
}

IntegralResult integral(const BetaMap& map, const RealFn& f, double a, double b,
                        const TruncationConfig& cfg) {
  require_ordered(a, b);
  const auto term = weighted(f);
  const SeriesSum at_b = sum_orbit_series(map, b, cfg, term);
  const SeriesSum at_a = sum_orbit_series(map, a, cfg, term);
  return combine_branches(at_a, at_b);
}

IntegralResult integral_traced(const BetaMap& map, const RealFn& f, double a, double b,
                               const TruncationConfig& cfg, const SeriesObserver& observer) {
  require_ordered(a, b);
  const auto term = weighted(f);
  const SeriesSum at_b = sum_orbit_series(map, b, cfg, term, &observer);
  const SeriesObserver negated = [&observer](std::size_t k, double t, double v) {
    observer(k, t, -v);
  };
  const SeriesSum at_a = sum_orbit_series(map, a, cfg, term, &negated);
  return combine_branches(at_a, at_b);
}

IntegralResult double_integral(const BetaMap& map, const RealFn2& F, double a, double b,
                               const TruncationConfig& cfg) {
  require_ordered(a, b);
  bool inner_converged = true;
  bool inner_nan = false;
  double inner_tail = 0.0;
  const RealFn inner = [&](double y) {
    const RealFn slice = [&F, y](double x) { return F(x, y); };
    const IntegralResult r = integral(map, slice, a, b, cfg);
    inner_converged = inner_converged && r.converged;
    inner_nan = inner_nan || r.nan_encountered;
    inner_tail = std::max(inner_tail, r.tail_estimate);
    return r.value;
  };
  IntegralResult outer = integral(map, inner, a, b, cfg);
  outer.converged = outer.converged && inner_converged;
  outer.nan_encountered = outer.nan_encountered || inner_nan;
  outer.tail_estimate = std::max(outer.tail_estimate, inner_tail);
  if (outer.nan_encountered) outer.value = kNaN;
  return outer;
}

std::vector<double> grid_points(const BetaMap& map, double a, double b,
                                const TruncationConfig& cfg) {
  const Orbit oa = orbit(map, a, cfg.gap_tol, cfg.k_max);
  const Orbit ob = orbit(map, b, cfg.gap_tol, cfg.k_max);
  std::vector<double> pts;
  pts.reserve(oa.points.size() + ob.points.size() + 1);
  pts.insert(pts.end(), oa.points.begin(), oa.points.end());
  pts.insert(pts.end(), ob.points.begin(), ob.points.end());
  pts.push_back(map.s0());
  return pts;
}

double lp_norm(const BetaMap& map, const RealFn& f, double a, double b, double p,
               const TruncationConfig& cfg) {
  require_fixed_point_inside(map, a, b);
  if (!(p >= 1.0)) {
    throw Error(ErrorCode::parameter_out_of_range, "parameter-out-of-range: p must be >= 1");
  }
  if (std::isinf(p)) {
    double sup = 0.0;
    for (double t : grid_points(map, a, b, cfg)) {
      const double v = std::fabs(f(t));
      if (std::isnan(v)) return kNaN;
      sup = std::max(sup, v);
    }
    return sup;
  }
  const RealFn power = [&f, p](double t) { return std::pow(std::fabs(f(t)), p); };
  const IntegralResult r = integral(map, power, a, b, cfg);
  return std::pow(r.value, 1.0 / p);
}

double inner_product(const BetaMap& map, const RealFn& f, const RealFn& g, double a, double b,
                     const TruncationConfig& cfg) {
  require_fixed_point_inside(map, a, b);
  const RealFn product = [&f, &g](double t) { return f(t) * g(t); };
  return integral(map, product, a, b, cfg).value;
}

}  // namespace betacalc
