#include "betacalc/applications.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <tuple>

#include "betacalc/error.hpp"

namespace betacalc {

namespace {

void fill_branch(const BetaMap& map, double x, double width, const TruncationConfig& cfg,
                 std::vector<double>& points, std::vector<double>& weights, double& deficit) {
  const Orbit o = orbit(map, x, cfg.gap_tol, cfg.k_max);
  for (std::size_t k = 0; k + 1 < o.points.size(); ++k) {
    points.push_back(o.points[k]);
    weights.push_back(std::fabs(o.points[k] - o.points[k + 1]) / width);
  }
  deficit += std::fabs(o.points.back() - map.s0()) / width;
}

template <class Visit>
void for_each_support_point(const BetaProbModel& model, Visit&& visit) {
  for (double x : model.points_a) visit(x);
  for (double x : model.points_b) visit(x);
  visit(model.map.s0());
}

std::pair<double, double> support_range(const BetaProbModel& model, const RealFn& f) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for_each_support_point(model, [&](double x) {
    const double v = f(x);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  });
  return {lo, hi};
}

BoundParams support_bounds(const BetaProbModel& model, const RealFn& f, const RealFn& g) {
  BoundParams p;
  p.source = ParamSource::grid_estimated;
  std::tie(p.m, p.M) = support_range(model, f);
  const auto [n, N] = support_range(model, g);
  p.n = n;
  p.N = N;
  return p;
}

double gruss_constant(const BoundParams& p) {
  p.validate();
  if (!p.n || !p.N) {
    throw Error(ErrorCode::parameter_out_of_range,
                "parameter-out-of-range: the window needs bounds for both functions");
  }
  return 0.25 * (p.M - p.m) * (*p.N - *p.n);
}

}  // namespace

double BetaProbModel::total_mass() const {
  double sum = 0.0;
  for (double w : weights_a) sum += w;
  for (double w : weights_b) sum += w;
  return sum;
}

BetaProbModel build_model(const BetaMap& map, double a, double b, const TruncationConfig& cfg,
                          ModelOptions opts) {
  cfg.validate();
  require_ordered(a, b);
  if (opts.allow_boundary_fixed_point) {
    require_fixed_point_inside(map, a, b);
  } else if (!(a < map.s0() && map.s0() < b)) {
    throw Error(ErrorCode::fixed_point_outside,
                "fixed-point-outside: the probability model requires a < s0 < b");
  }
  BetaProbModel model{map, a, b, cfg.k_max, {}, {}, {}, {}, 0.0};
  const double width = b - a;
  fill_branch(map, a, width, cfg, model.points_a, model.weights_a, model.mass_deficit);
  fill_branch(map, b, width, cfg, model.points_b, model.weights_b, model.mass_deficit);
  return model;
}

double expected_value(const BetaProbModel& model, const RealFn& h) {
  double sum = 0.0;
  for (std::size_t k = 0; k < model.points_a.size(); ++k) {
    sum += h(model.points_a[k]) * model.weights_a[k];
  }
  for (std::size_t k = 0; k < model.points_b.size(); ++k) {
    sum += h(model.points_b[k]) * model.weights_b[k];
  }
  return sum;
}

double mean_point(const BetaProbModel& model) {
  return expected_value(model, [](double x) { return x; });
}

Window gruss_window(const BetaProbModel& model, const RealFn& f, const RealFn& g,
                    std::optional<BoundParams> params) {
  const BoundParams p = params ? *params : support_bounds(model, f, g);
  const double k = gruss_constant(p);
  const double centre = expected_value(model, f) * expected_value(model, g);
  Window w;
  w.lower = centre - k;
  w.upper = centre + k;
  w.expected_fg = expected_value(model, [&](double x) { return f(x) * g(x); });
  const double tol = default_report_tolerance(std::max(std::fabs(w.lower), std::fabs(w.upper)));
  w.contains = w.lower - tol <= w.expected_fg && w.expected_fg <= w.upper + tol;
  return w;
}

SandwichBounds hermite_hadamard_product_bounds(const BetaProbModel& model, const RealFn& f,
                                               const RealFn& g,
                                               std::optional<BoundParams> params) {
  const BoundParams p = params ? *params : support_bounds(model, f, g);
  const double k = gruss_constant(p);
  SandwichBounds s;
  s.mean = mean_point(model);
  s.lambda = (s.mean - model.a) / (model.b - model.a);
  const double chord_f = (1.0 - s.lambda) * f(model.a) + s.lambda * f(model.b);
  const double chord_g = (1.0 - s.lambda) * g(model.a) + s.lambda * g(model.b);
  s.lower = f(s.mean) * g(s.mean) - k;
  s.upper = chord_f * chord_g + k;
  s.expected_fg = expected_value(model, [&](double x) { return f(x) * g(x); });
  const double tol = default_report_tolerance(std::max(std::fabs(s.lower), std::fabs(s.upper)));
  s.contains = s.lower - tol <= s.expected_fg && s.expected_fg <= s.upper + tol;
  s.convexity_spot_check =
      midpoint_convexity_spot_check(model, f) && midpoint_convexity_spot_check(model, g);
  return s;
}

bool midpoint_convexity_spot_check(const BetaProbModel& model, const RealFn& f,
                                   std::size_t triples) {
  std::vector<double> pts;
  for_each_support_point(model, [&](double x) { pts.push_back(x); });
  if (pts.size() < 2) return true;
  std::mt19937_64 rng(0x6a09e667f3bcc909ULL);
  for (std::size_t i = 0; i < triples; ++i) {
    const double x = pts[rng() % pts.size()];
    const double y = pts[rng() % pts.size()];
    const double chord = 0.5 * (f(x) + f(y));
    const double mid = f(0.5 * (x + y));
    if (mid > chord + 1e-12 * (1.0 + std::fabs(chord))) return false;
  }
  return true;
}

}  // namespace betacalc
