#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "betacalc/beta_map.hpp"
#include "betacalc/calculus.hpp"
#include "betacalc/quadrature.hpp"

namespace betacalc {

enum class ParamSource { user_supplied, grid_estimated };

std::string_view to_string(ParamSource source) noexcept;

/// Pointwise bounds m <= f <= M, n <= g <= N and Lipschitz-type moduli used by
/// the bound checks.
struct BoundParams {
  double m = 0.0;
  double M = 0.0;
  std::optional<double> n;
  std::optional<double> N;
  std::optional<double> L;
  std::optional<double> sup_dbeta_u;
  ParamSource source = ParamSource::grid_estimated;

  /// Throws parameter_out_of_range if m > M, n > N or L < 0.
  void validate() const;

  friend bool operator==(const BoundParams&, const BoundParams&) = default;
};

struct ReportDiagnostics {
  bool converged = true;
  bool nan_encountered = false;
  double tail_estimate = 0.0;

  void absorb(const IntegralResult& r);

  friend bool operator==(const ReportDiagnostics&, const ReportDiagnostics&) = default;
};

/// Outcome of one bound check: lhs <= rhs up to tol_report.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool holds = true;   // slack >= -tol_report
  BoundParams params;
  std::map<std::string, double> witness;  // optional structured note
  double tol_report = 0.0;
  ReportDiagnostics diagnostics;

  friend bool operator==(const InequalityReport&, const InequalityReport&) = default;
};

/// Relative reporting tolerance: 1e-8 * (1 + |rhs|).
double default_report_tolerance(double rhs) noexcept;

InequalityReport make_report(std::string name, double lhs, double rhs, BoundParams params,
                             std::optional<double> tol = std::nullopt);

struct GridBoundsOptions {
  /// When set, f(s0) is replaced by the two one-sided orbit-tail values.
  bool discontinuous_at_s0 = false;
};

/// m, M = min/max of f over the generated grid points and s0.
BoundParams grid_bounds(const BetaMap& map, const RealFn& f, double a, double b,
                        const TruncationConfig& cfg = {}, GridBoundsOptions opts = {});

/// Grid estimates for m, M (from f) and n, N (from g).
BoundParams grid_bounds_pair(const BetaMap& map, const RealFn& f, const RealFn& g, double a,
                             double b, const TruncationConfig& cfg = {});

/// |T(f, g)| <= (M - m)(N - n) / 4. Requires a < s0 < b.
InequalityReport gruss_check(const BetaMap& map, const RealFn& f, const RealFn& g, double a,
                             double b, const BoundParams& params,
                             const TruncationConfig& cfg = {});

/// The two-step bound
///   |T(f, g)| <= (M - m)/2 * mean|g - mean(g)| <= (M - m)/2 * sqrt(T(g, g)).
/// The first report carries the centred bound sup|f - (M + m)/2| * mean|g -
/// mean(g)| in its witness. Requires a <= s0 <= b.
std::pair<InequalityReport, InequalityReport> pre_gruss_check(
    const BetaMap& map, const RealFn& f, const RealFn& g, double a, double b,
    const BoundParams& params, const TruncationConfig& cfg = {});

/// |T(f, g)| <= (M - m)/2 * sqrt(T(g, g)). Requires a < s0 < b.
InequalityReport functional_bound_check(const BetaMap& map, const RealFn& f, const RealFn& g,
                                        double a, double b, const BoundParams& params,
                                        const TruncationConfig& cfg = {});

/// integral |f g| <= ||f||_p ||g||_p' (p > 1) or ||g||_inf integral |f| (p = 1).
InequalityReport holder_check(const BetaMap& map, const RealFn& f, const RealFn& g, double a,
                              double b, double p, const TruncationConfig& cfg = {});

/// max |u(x) - u(beta(x))| / |x - beta(x)| over the grid, x != s0. Returns +inf
/// if any quotient is not finite.
double beta_lipschitz_estimate(const BetaMap& map, const RealFn& u, double a, double b,
                               const TruncationConfig& cfg = {});

/// sup |D[u]| over the grid including the s0 evaluation.
double dbeta_sup_norm(const BetaMap& map, const RealFn& u, double a, double b,
                      const TruncationConfig& cfg = {}, const DerivativeOptions& opts = {});

/// max |u(x) - u(y)| / |x - y| over all pairs of grid points (L-Lipschitz on
/// the grid, as opposed to the beta-Lipschitz modulus).
double grid_lipschitz_estimate(const BetaMap& map, const RealFn& u, double a, double b,
                               const TruncationConfig& cfg = {});

struct RsIntegralResult {
  double value = 0.0;
  double jump_s0 = 0.0;  // u(s0+) - u(s0-) read from the orbit tails
  bool tails_settled = true;
  IntegralResult diagnostics;
};

/// Riemann-Stieltjes sum over both orbits with u-increments replacing widths.
RsIntegralResult rs_integral(const BetaMap& map, const RealFn& f, const RealFn& u, double a,
                             double b, const TruncationConfig& cfg = {});

/// |RS integral of f du - integral of f D[u]|.
double rs_identity_residual(const BetaMap& map, const RealFn& f, const RealFn& u, double a,
                            double b, const TruncationConfig& cfg = {});

/// |RS integral| <= L integral |f|. Requires a <= s0 <= b.
InequalityReport rs_abs_bound_check(const BetaMap& map, const RealFn& f, const RealFn& u,
                                    double a, double b, double L,
                                    const TruncationConfig& cfg = {});

struct RsGrussOptions {
  /// Accept a == s0 or b == s0; the missing one-sided limit becomes u(s0).
  bool allow_boundary_fixed_point = false;
};

/// |RS - (u(b) - u(a) - jump)/(b - a) * integral f| <= L (M - m)(b - a) / 2.
/// params must carry L. Requires a < s0 < b unless allow_boundary_fixed_point.
InequalityReport rs_gruss_check(const BetaMap& map, const RealFn& f, const RealFn& u,
                                double a, double b, const BoundParams& params,
                                const TruncationConfig& cfg = {}, RsGrussOptions opts = {});

enum class RsVariant { continuous_u, lipschitz_grid, dbeta_sup, nonneg_weight, trapezoid };

std::string_view to_string(RsVariant v) noexcept;
std::optional<RsVariant> parse_rs_variant(std::string_view name) noexcept;

/// Specialisations of the Riemann-Stieltjes bound:
///  - continuous_u: u continuous at s0, no jump term, L = beta-Lipschitz estimate.
///  - lipschitz_grid: L-Lipschitz on the grid, a <= s0 <= b.
///  - dbeta_sup: L = ||D[u]||_inf with jump term.
///  - nonneg_weight: u plays the nonnegative weight g;
///      |integral f g - mean(g) integral f| <= ||g||_inf (M - m)(b - a) / 2.
///  - trapezoid: u is ignored;
///      |(f(a) + f(b))/2 - mean((f + f o beta)/2)|
///        <= ||D[f]||_inf / |f(b) - f(a)| (M - m)(b - a) / 2.
/// Throws hypothesis_violated naming the failing clause. When params is empty,
/// m and M are grid-estimated from f.
InequalityReport rs_gruss_variant_check(const BetaMap& map, const RealFn& f, const RealFn& u,
                                        double a, double b, RsVariant variant,
                                        const TruncationConfig& cfg = {},
                                        std::optional<BoundParams> params = std::nullopt);

/// Equality witnesses: u(x) = |x - (a+b)/2|, f(x) = sgn(x - (a+b)/2) for the
/// Riemann-Stieltjes bound and f = g = sgn(x - (a+b)/2) for the 1/4 bound.
/// Requires s0 == (a + b)/2 within 1e-12 (midpoint_not_fixed_point).
std::pair<InequalityReport, InequalityReport> sharpness_demo(const BetaMap& map, double a,
                                                             double b,
                                                             const TruncationConfig& cfg = {});

}  // namespace betacalc
