#include "betacalc/beta_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "betacalc/error.hpp"

namespace betacalc {

namespace {

constexpr double kFixedPointResidual = 1e-12;
constexpr double kEndpointAgreement = 1e-9;
constexpr std::size_t kLocateIterations = 10'000;

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Iterates toward the fixed point until the step size is negligible. Returns
// nullopt if the orbit leaves the finite reals or never settles.
std::optional<double> settle(const Expr& beta, double x) {
  double t = x;
  for (std::size_t k = 0; k < kLocateIterations; ++k) {
    const double next = beta(t);
    if (!std::isfinite(next)) return std::nullopt;
    if (std::fabs(next - t) <= 1e-15 * std::max(1.0, std::fabs(t))) return next;
    t = next;
  }
  return std::nullopt;
}

// Bisection on beta(t) - t over a bracket [lo, hi] with a sign change.
double bisect_fixed_point(const Expr& beta, double lo, double hi) {
  double flo = beta(lo) - lo;
  for (int i = 0; i < 200 && lo < hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = beta(mid) - mid;
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> uniform_samples(Interval probe, std::size_t n) {
  std::vector<double> out;
  out.reserve(n);
  if (n == 1) {
    out.push_back(0.5 * (probe.lo + probe.hi));
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(probe.lo + (probe.hi - probe.lo) * static_cast<double>(i) /
                                 static_cast<double>(n - 1));
  }
  return out;
}

std::optional<double> locate_fixed_point(const Expr& beta, Interval probe,
                                         const std::vector<double>& samples) {
  const auto from_lo = settle(beta, probe.lo);
  const auto from_hi = settle(beta, probe.hi);
  if (from_lo && from_hi && std::fabs(*from_lo - *from_hi) <= kEndpointAgreement) {
    double lo = std::min(*from_lo, *from_hi);
    double hi = std::max(*from_lo, *from_hi);
    if (lo < hi && beta(lo) - lo > 0.0 && beta(hi) - hi < 0.0) {
      return bisect_fixed_point(beta, lo, hi);
    }
    return 0.5 * (*from_lo + *from_hi);
  }
  // The orbits disagree or diverge; fall back to a sign change of beta(t) - t
  // on the sample grid so that validation can name the violated invariant.
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double d = beta(samples[i]) - samples[i];
    if (d == 0.0) return samples[i];
    if (i + 1 < samples.size()) {
      const double e = beta(samples[i + 1]) - samples[i + 1];
      if (std::isfinite(d) && std::isfinite(e) && (d > 0.0) != (e > 0.0) && e != 0.0) {
        return bisect_fixed_point(beta, samples[i], samples[i + 1]);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

BetaMap BetaMap::hahn(double q, double omega) {
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorCode::parameter_out_of_range,
                "parameter-out-of-range: q must lie in (0, 1), got " + num(q));
  }
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw Error(ErrorCode::parameter_out_of_range,
                "parameter-out-of-range: omega must be >= 0, got " + num(omega));
  }
  BetaMap m;
  m.kind_ = omega == 0.0 ? MapKind::jackson : MapKind::hahn;
  m.q_ = q;
  m.omega_ = omega;
  m.s0_ = omega / (1.0 - q);
  return m;
}

BetaMap BetaMap::jackson(double q) { return hahn(q, 0.0); }

BetaMap BetaMap::custom(Expr expr, Interval probe, std::size_t samples) {
  if (!(probe.lo < probe.hi) || !std::isfinite(probe.lo) || !std::isfinite(probe.hi)) {
    throw Error(ErrorCode::parameter_out_of_range,
                "parameter-out-of-range: probe interval must be finite with lo < hi");
  }
  if (samples < 2) {
    throw Error(ErrorCode::parameter_out_of_range,
                "parameter-out-of-range: at least two samples are required");
  }
  const auto grid = uniform_samples(probe, samples);
  const auto located = locate_fixed_point(expr, probe, grid);
  if (!located) {
    throw Error(ErrorCode::no_fixed_point,
                "no-fixed-point: orbits from the probe endpoints did not converge to a "
                "common limit and beta(t) - t has no sign change on the samples");
  }
  const double s0 = *located;
  const double scale = std::max(1.0, std::fabs(s0));

  if (!probe.contains(s0)) {
    throw ValidationError("fixed point inside probe interval", s0,
                          "validation-failed: fixed point " + num(s0) +
                              " lies outside the probe interval");
  }
  const double residual = std::fabs(expr(s0) - s0);
  if (!(residual <= kFixedPointResidual * scale)) {
    throw ValidationError("fixed point residual", s0,
                          "validation-failed: |beta(s0) - s0| = " + num(residual));
  }
  for (double t : grid) {
    const double bt = expr(t);
    if (!std::isfinite(bt)) {
      throw ValidationError("finite on probe interval", t,
                            "validation-failed: beta(" + num(t) + ") is not finite");
    }
    if (std::fabs(t - s0) <= kFixedPointResidual * scale) continue;
    const double sign = (t - s0) * (bt - t);
    if (!(sign < 0.0)) {
      throw ValidationError("sign condition (t - s0)(beta(t) - t) < 0", t,
                            "validation-failed: (t - s0)(beta(t) - t) = " + num(sign) +
                                " at t = " + num(t));
    }
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(expr(grid[i]) < expr(grid[i + 1]))) {
      throw ValidationError("strictly increasing", grid[i + 1],
                            "validation-failed: beta is not strictly increasing between " +
                                num(grid[i]) + " and " + num(grid[i + 1]));
    }
  }

  BetaMap m;
  m.kind_ = MapKind::custom;
  m.s0_ = s0;
  m.expr_ = std::move(expr);
  m.domain_ = probe;
  return m;
}

double BetaMap::scale() const noexcept { return std::max(1.0, std::fabs(s0_)); }

std::string BetaMap::describe() const {
  switch (kind_) {
    case MapKind::jackson: return "jackson(q=" + num(q_) + ")";
    case MapKind::hahn: return "hahn(q=" + num(q_) + ", omega=" + num(omega_) + ")";
    case MapKind::custom: break;
  }
  return "custom(" + to_string(*expr_) + ", s0=" + num(s0_) + ")";
}

double iterate(const BetaMap& map, double x, std::size_t k) noexcept {
  double t = x;
  for (std::size_t i = 0; i < k; ++i) t = map(t);
  return t;
}

Orbit orbit(const BetaMap& map, double x, double gap_tol, std::size_t k_max) {
  Orbit o;
  o.start = x;
  const double tol = gap_tol * map.scale();
  const double s0 = map.s0();
  double t = x;
  o.points.push_back(t);
  for (std::size_t k = 0;; ++k) {
    const double gap = std::fabs(t - s0);
    if (gap <= tol) {
      o.converged = true;
      break;
    }
    if (k >= k_max) break;
    const double next = map(t);
    if (next == t || !std::isfinite(next)) {
      // Stalled at a floating-point fixed point next to s0.
      o.converged = std::isfinite(next) && gap <= 64.0 * std::numeric_limits<double>::epsilon() * map.scale();
      break;
    }
    t = next;
    o.points.push_back(t);
  }
  o.terminal_gap = std::fabs(o.points.back() - s0);
  return o;
}

}  // namespace betacalc
