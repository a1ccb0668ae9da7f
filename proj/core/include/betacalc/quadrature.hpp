#pragma once

#include <cstddef>
#include <functional>

#include "betacalc/beta_map.hpp"

namespace betacalc {

using RealFn = std::function<double(double)>;
using RealFn2 = std::function<double(double, double)>;

/// Controls the truncation of every orbit series.
struct TruncationConfig {
  double term_tol = 1e-13;
  double gap_tol = kDefaultGapTol;  // relative to BetaMap::scale()
  std::size_t consecutive_small = 5;
  std::size_t k_max = kDefaultKMax;

  /// Throws parameter_out_of_range unless every field is positive.
  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  std::size_t terms_a = 0;
  std::size_t terms_b = 0;
  double tail_estimate = 0.0;
  bool converged = true;
  bool nan_encountered = false;
};

/// Sum of one orbit series: sum_k term(beta^k(x), beta^{k+1}(x)).
struct SeriesSum {
  double value = 0.0;
  std::size_t terms = 0;
  double tail_estimate = 0.0;
  bool converged = false;
  bool nan_encountered = false;
  double last_point = 0.0;  // the last orbit point reached
};

/// Term of an orbit series given the current grid point and its image.
using SeriesTerm = std::function<double(double t, double beta_t)>;

/// Per-term observer used for plot-ready traces.
using SeriesObserver = std::function<void(std::size_t k, double grid_point, double term)>;

/// Generic truncated orbit series. The sum stops once `consecutive_small`
/// consecutive terms are below term_tol, the orbit is within gap_tol of s0, and
/// the geometric tail estimate is at most 10 * term_tol. The tail estimate is
/// |last| * r / (1 - r), r being the ratio of the last two nonzero term
/// magnitudes clamped to [0, 0.999]. A NaN term aborts with value = NaN.
SeriesSum sum_orbit_series(const BetaMap& map, double x, const TruncationConfig& cfg,
                           const SeriesTerm& term, const SeriesObserver* observer = nullptr);

/// Combines the two branches of a_to_b = branch(b) - branch(a).
IntegralResult combine_branches(const SeriesSum& at_a, const SeriesSum& at_b);

IntegralResult integral_from_s0(const BetaMap& map, const RealFn& f, double x,
                                const TruncationConfig& cfg = {});

/// Requires a < b (order_violation otherwise).
IntegralResult integral(const BetaMap& map, const RealFn& f, double a, double b,
                        const TruncationConfig& cfg = {});

/// Integral over [a, b] that reports every term to `observer`, b-branch first.
/// The reported term is already signed, so the running sum ends at the value.
IntegralResult integral_traced(const BetaMap& map, const RealFn& f, double a, double b,
                               const TruncationConfig& cfg, const SeriesObserver& observer);

/// Iterated integral: inner over x for fixed y, then outer over y.
IntegralResult double_integral(const BetaMap& map, const RealFn2& F, double a, double b,
                               const TruncationConfig& cfg = {});

/// L^p norm over [a, b]; p = infinity takes the sup of |f| over the generated
/// grid points and s0. Requires a <= s0 <= b and p >= 1.
double lp_norm(const BetaMap& map, const RealFn& f, double a, double b, double p,
               const TruncationConfig& cfg = {});

/// <f, g> = integral of f * g over [a, b]. Requires a <= s0 <= b.
double inner_product(const BetaMap& map, const RealFn& f, const RealFn& g, double a, double b,
                     const TruncationConfig& cfg = {});

/// The truncated grid {beta^k(a)} u {beta^k(b)} u {s0} as generated under cfg.
std::vector<double> grid_points(const BetaMap& map, double a, double b,
                                const TruncationConfig& cfg = {});

/// Throws fixed_point_outside unless a <= s0 <= b.
void require_fixed_point_inside(const BetaMap& map, double a, double b);

/// Throws order_violation unless a < b.
void require_ordered(double a, double b);

}  // namespace betacalc
