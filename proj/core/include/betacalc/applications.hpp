#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "betacalc/beta_map.hpp"
#include "betacalc/inequalities.hpp"
#include "betacalc/quadrature.hpp"

namespace betacalc {

/// Discrete distribution on the grid of [a, b]: the orbit point beta^k(x)
/// carries the weight |beta^k(x) - beta^{k+1}(x)| / (b - a).
struct BetaProbModel {
  BetaMap map;
  double a = 0.0;
  double b = 0.0;
  std::size_t k_max = 0;
  std::vector<double> points_a;
  std::vector<double> points_b;
  std::vector<double> weights_a;
  std::vector<double> weights_b;
  double mass_deficit = 0.0;  // span left between the last orbit points and s0

  double total_mass() const;
};

struct ModelOptions {
  /// Accept a == s0 or b == s0. The degenerate side then carries no weight.
  bool allow_boundary_fixed_point = false;
};

/// Requires a < s0 < b (fixed_point_outside) unless the option allows the
/// closed interval.
BetaProbModel build_model(const BetaMap& map, double a, double b,
                          const TruncationConfig& cfg = {}, ModelOptions opts = {});

/// sum h(x) p(x) over the truncated support.
double expected_value(const BetaProbModel& model, const RealFn& h);

/// Expected value of the identity, i.e. the mean of the distribution.
double mean_point(const BetaProbModel& model);

struct Window {
  double lower = 0.0;
  double upper = 0.0;
  double expected_fg = 0.0;
  bool contains = false;  // within default_report_tolerance of the wider end
};

/// E[f]E[g] -/+ (M - m)(N - n)/4. Bounds are grid-estimated when not given.
Window gruss_window(const BetaProbModel& model, const RealFn& f, const RealFn& g,
                    std::optional<BoundParams> params = std::nullopt);

struct SandwichBounds {
  double lower = 0.0;
  double upper = 0.0;
  double expected_fg = 0.0;
  double mean = 0.0;
  double lambda = 0.0;
  bool contains = false;
  /// False when the midpoint-convexity spot check found a violation; the
  /// bound then rests on an unverified hypothesis.
  bool convexity_spot_check = true;
};

/// Hermite-Hadamard product sandwich for convex f and g:
///   f(p) g(p) - K <= E[f g] <= [(1-l) f(a) + l f(b)] [(1-l) g(a) + l g(b)] + K
/// with p the mean, l = (p - a)/(b - a) and K = (M - m)(N - n)/4.
SandwichBounds hermite_hadamard_product_bounds(const BetaProbModel& model, const RealFn& f,
                                               const RealFn& g,
                                               std::optional<BoundParams> params = std::nullopt);

/// Midpoint convexity on `triples` random grid pairs (fixed seed).
bool midpoint_convexity_spot_check(const BetaProbModel& model, const RealFn& f,
                                   std::size_t triples = 100);

}  // namespace betacalc
