#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "betacalc/expr.hpp"

namespace betacalc {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t) const noexcept { return lo <= t && t <= hi; }
};

enum class MapKind { hahn, jackson, custom };

/// Default orbit controls shared by every consumer of orbits.
inline constexpr double kDefaultGapTol = 1e-12;
inline constexpr std::size_t kDefaultKMax = 10'000;

/// A strictly increasing map with a unique attracting fixed point s0 such that
/// (t - s0)(beta(t) - t) < 0 for every t != s0 in the domain.
///
/// Instances are only created through the validating factories, so a BetaMap
/// value always satisfies its invariants (checked analytically for the affine
/// kinds and by sampling for custom maps).
class BetaMap {
 public:
  static BetaMap hahn(double q, double omega);
  static BetaMap jackson(double q);
  static BetaMap custom(Expr expr, Interval probe, std::size_t samples = 1000);

  double operator()(double t) const noexcept {
    switch (kind_) {
      case MapKind::hahn:
      case MapKind::jackson:
        return q_ * t + omega_;
      case MapKind::custom:
        break;
    }
    return (*expr_)(t);
  }

  MapKind kind() const noexcept { return kind_; }
  double s0() const noexcept { return s0_; }
  /// Only meaningful for the affine kinds.
  double q() const noexcept { return q_; }
  double omega() const noexcept { return omega_; }
  const std::optional<Expr>& expr() const noexcept { return expr_; }
  Interval domain() const noexcept { return domain_; }

  /// Absolute scale used to turn relative gap tolerances into absolute ones.
  double scale() const noexcept;

  std::string describe() const;

 private:
  BetaMap() = default;

  MapKind kind_ = MapKind::jackson;
  double q_ = 0.0;
  double omega_ = 0.0;
  double s0_ = 0.0;
  std::optional<Expr> expr_;
  Interval domain_{};
};

inline BetaMap make_hahn(double q, double omega) { return BetaMap::hahn(q, omega); }
inline BetaMap make_jackson(double q) { return BetaMap::jackson(q); }
inline BetaMap make_custom(Expr expr, Interval probe, std::size_t samples = 1000) {
  return BetaMap::custom(std::move(expr), probe, samples);
}

/// beta^k(x), with beta^0(x) = x.
double iterate(const BetaMap& map, double x, std::size_t k) noexcept;

struct Orbit {
  double start = 0.0;
  std::vector<double> points;  // beta^0(x), beta^1(x), ...
  bool converged = false;
  double terminal_gap = 0.0;   // |last point - s0|
};

/// Iterates from x until |beta^k(x) - s0| <= gap_tol * map.scale() or k_max
/// steps were taken. Also stops (converged) when the orbit stalls in floating
/// point, i.e. beta(t) == t.
Orbit orbit(const BetaMap& map, double x, double gap_tol = kDefaultGapTol,
            std::size_t k_max = kDefaultKMax);

}  // namespace betacalc
