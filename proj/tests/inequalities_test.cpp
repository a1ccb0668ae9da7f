#include <gtest/gtest.h>

#include <cmath>

#include "betacalc/error.hpp"
#include "betacalc/expr.hpp"
#include "betacalc/functionals.hpp"
#include "betacalc/inequalities.hpp"
#include "support.hpp"

using namespace betacalc;

namespace {

const BetaMap jackson_half = make_jackson(0.5);
const BetaMap hahn_half = make_hahn(0.5, 1.0);

void expect_code(ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

BoundParams bounds(double m, double M, double n, double N) {
  BoundParams p;
  p.m = m;
  p.M = M;
  p.n = n;
  p.N = N;
  p.source = ParamSource::user_supplied;
  return p;
}

}  // namespace

TEST(Report, HoldsMatchesSlack) {
  const InequalityReport r = make_report("r", 1.0, 2.0, {});
  EXPECT_EQ(r.slack, 1.0);
  EXPECT_TRUE(r.holds);
  EXPECT_DOUBLE_EQ(r.tol_report, 1e-8 * 3.0);
  EXPECT_TRUE(make_report("edge", 2.0 + 2e-8, 2.0, {}).holds);
  EXPECT_FALSE(make_report("over", 2.0 + 4e-8, 2.0, {}).holds);
}

TEST(BoundParams, Validation) {
  EXPECT_THROW(bounds(1, 0, 0, 1).validate(), Error);
  EXPECT_THROW(bounds(0, 1, 1, 0).validate(), Error);
  BoundParams p = bounds(0, 1, 0, 1);
  p.L = -1.0;
  EXPECT_THROW(p.validate(), Error);
}

TEST(GridBounds, Examples) {
  const BoundParams s = grid_bounds(jackson_half, parse("sgn(x)"), -1.0, 1.0);
  EXPECT_EQ(s.m, -1.0);
  EXPECT_EQ(s.M, 1.0);
  EXPECT_EQ(s.source, ParamSource::grid_estimated);
  const BoundParams sq = grid_bounds(jackson_half, parse("x^2"), -1.0, 1.0);
  EXPECT_EQ(sq.m, 0.0);
  EXPECT_EQ(sq.M, 1.0);
  const BoundParams c = grid_bounds(hahn_half, parse("2.5"), 0.0, 4.0);
  EXPECT_EQ(c.m, 2.5);
  EXPECT_EQ(c.M, 2.5);
}

TEST(GridBounds, DiscontinuousAtFixedPoint) {
  // f(s0) = 5 is an isolated value; the one-sided tails are 0.
  const Expr f = parse("5 - 5*abs(sgn(x))");
  EXPECT_EQ(grid_bounds(jackson_half, f, -1.0, 1.0).M, 5.0);
  GridBoundsOptions opts;
  opts.discontinuous_at_s0 = true;
  EXPECT_EQ(grid_bounds(jackson_half, f, -1.0, 1.0, {}, opts).M, 0.0);
}

TEST(Gruss, Examples) {
  const Expr sgn = parse("sgn(x)");
  const InequalityReport sharp =
      gruss_check(jackson_half, sgn, sgn, -1.0, 1.0, grid_bounds_pair(jackson_half, sgn, sgn, -1.0, 1.0));
  EXPECT_NEAR(sharp.lhs, 1.0, 1e-12);
  EXPECT_EQ(sharp.rhs, 1.0);
  EXPECT_NEAR(sharp.slack, 0.0, 1e-9);
  EXPECT_TRUE(sharp.holds);

  const InequalityReport flat = gruss_check(jackson_half, parse("3"), parse("x^3"), -1.0, 1.0,
                                            bounds(3, 3, -1, 1));
  EXPECT_NEAR(flat.lhs, 0.0, 1e-15);
  EXPECT_TRUE(flat.holds);
}

TEST(Gruss, Preconditions) {
  expect_code(ErrorCode::fixed_point_outside, [] {
    gruss_check(jackson_half, parse("x"), parse("x"), 0.0, 1.0, bounds(0, 1, 0, 1));
  });
  BoundParams no_n;
  no_n.M = 1.0;
  expect_code(ErrorCode::parameter_out_of_range,
              [&] { gruss_check(jackson_half, parse("x"), parse("x"), -1.0, 1.0, no_n); });
}

TEST(PreGruss, Examples) {
  auto [first, second] = pre_gruss_check(jackson_half, parse("x^2"), parse("4"), -1.0, 1.0,
                                         grid_bounds(jackson_half, parse("x^2"), -1.0, 1.0));
  EXPECT_NEAR(first.lhs, 0.0, 1e-14);
  EXPECT_NEAR(first.rhs, 0.0, 1e-14);
  EXPECT_NEAR(second.rhs, 0.0, 1e-14);

  const Expr f = parse("sgn(x)");
  const Expr g = parse("x");
  auto [p1, p2] = pre_gruss_check(jackson_half, f, g, -1.0, 1.0, grid_bounds(jackson_half, f, -1.0, 1.0));
  EXPECT_TRUE(p1.holds);
  EXPECT_TRUE(p2.holds);
  EXPECT_GE(p1.slack, 0.0);
  EXPECT_GE(p2.slack, 0.0);
  EXPECT_LE(p1.rhs, p2.rhs + 1e-10);
  EXPECT_EQ(p1.rhs, p2.lhs);
  // mean |x| over [-1, 1] with q = 1/2 is (1/2)(2/3 + 2/3) = 2/3.
  EXPECT_NEAR(p1.witness.at("mean_abs_deviation_g"), 2.0 / 3.0, 1e-14);
  EXPECT_LE(p1.witness.at("centered_bound"), p1.rhs + 1e-12);
}

TEST(FunctionalBound, Examples) {
  const Expr g = parse("x^3");
  const double tgg = chebyshev(jackson_half, g, g, -1.0, 1.0).t_fg;
  const InequalityReport r = functional_bound_check(jackson_half, g, g, -1.0, 1.0, bounds(-1, 1, -1, 1));
  EXPECT_NEAR(r.rhs, std::sqrt(tgg), 1e-14);
  EXPECT_GE(r.rhs, r.lhs);

  const InequalityReport zero =
      functional_bound_check(jackson_half, parse("x"), parse("2"), -1.0, 1.0, bounds(-1, 1, 2, 2));
  EXPECT_NEAR(zero.lhs, 0.0, 1e-14);
  EXPECT_NEAR(zero.rhs, 0.0, 1e-14);
}

TEST(Holder, Examples) {
  const Expr f = parse("x^2 - 2*x");
  const InequalityReport eq = holder_check(jackson_half, f, f, -1.0, 1.0, 2.0);
  EXPECT_NEAR(eq.lhs, eq.rhs, 1e-10);

  const Expr g = parse("x^3 + 0.5");
  const InequalityReport one = holder_check(hahn_half, parse("1"), g, 0.0, 4.0, 2.0);
  EXPECT_LE(one.lhs, std::sqrt(4.0) * lp_norm(hahn_half, g, 0.0, 4.0, 2.0) + 1e-12);
  EXPECT_TRUE(one.holds);

  const InequalityReport sup = holder_check(jackson_half, f, parse("sgn(x)"), -1.0, 1.0, 1.0);
  EXPECT_NEAR(sup.rhs, integral(jackson_half, parse("abs(x^2 - 2*x)"), -1.0, 1.0).value, 1e-14);
  EXPECT_TRUE(sup.holds);

  EXPECT_THROW(holder_check(jackson_half, f, f, -1.0, 1.0, 0.5), Error);
  EXPECT_THROW(holder_check(jackson_half, f, f, -1.0, 1.0, INFINITY), Error);
  expect_code(ErrorCode::fixed_point_outside, [&] { holder_check(jackson_half, f, f, 0.5, 1.0, 2.0); });
}

TEST(Lipschitz, Examples) {
  EXPECT_DOUBLE_EQ(beta_lipschitz_estimate(jackson_half, parse("abs(x - 0)"), -1.0, 1.0), 1.0);
  EXPECT_EQ(beta_lipschitz_estimate(jackson_half, parse("4"), -1.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(beta_lipschitz_estimate(jackson_half, parse("x^2"), 0.0, 1.0), 1.5);
  EXPECT_TRUE(std::isinf(beta_lipschitz_estimate(jackson_half, parse("log(x)"), -1.0, 1.0)));
}

TEST(DbetaSup, Examples) {
  EXPECT_NEAR(dbeta_sup_norm(hahn_half, parse("x"), 0.0, 4.0), 1.0, 1e-9);  // s0 term is a central difference
  EXPECT_DOUBLE_EQ(dbeta_sup_norm(jackson_half, parse("abs(x)"), -1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(dbeta_sup_norm(jackson_half, parse("x^2"), 0.0, 1.0), 1.5);
}

TEST(GridLipschitz, BoundsBetaLipschitz) {
  const Expr u = parse("x^3 - x");
  EXPECT_GE(grid_lipschitz_estimate(jackson_half, u, -1.0, 1.0),
            beta_lipschitz_estimate(jackson_half, u, -1.0, 1.0) - 1e-12);
  EXPECT_DOUBLE_EQ(grid_lipschitz_estimate(hahn_half, parse("3*x"), 0.0, 4.0), 3.0);
}

TEST(RsIntegral, Examples) {
  const Expr f = parse("x^2 + sin(x)");
  EXPECT_NEAR(rs_integral(hahn_half, f, parse("x"), 0.0, 4.0).value,
              integral(hahn_half, f, 0.0, 4.0).value, 1e-12);

  const RsIntegralResult sharp = rs_integral(jackson_half, parse("sgn(x)"), parse("abs(x)"), -1.0, 1.0);
  EXPECT_NEAR(sharp.value, 2.0, 1e-14);
  EXPECT_EQ(sharp.jump_s0, 0.0);
  EXPECT_TRUE(sharp.tails_settled);

  const Expr u = parse("exp(x) - x^3");
  EXPECT_NEAR(rs_integral(jackson_half, parse("1"), u, -1.0, 1.0).value, u(1.0) - u(-1.0), 1e-9);
}

TEST(RsIntegral, JumpOfStepIntegrator) {
  const RsIntegralResult r = rs_integral(jackson_half, parse("1"), parse("sgn(x)"), -1.0, 1.0);
  EXPECT_EQ(r.jump_s0, 2.0);
  EXPECT_NEAR(r.value, 0.0, 1e-15);
}

TEST(RsIdentity, Examples) {
  EXPECT_LE(rs_identity_residual(jackson_half, parse("x^3"), parse("x"), -1.0, 1.0), 1e-12);
  EXPECT_LE(rs_identity_residual(jackson_half, parse("x^2 - 1"), parse("2*x^3 + x"), -1.0, 1.0), 1e-8);
  EXPECT_LE(rs_identity_residual(jackson_half, parse("x^2"), parse("abs(x)"), -1.0, 1.0), 1e-8);
}

TEST(RsAbsBound, Examples) {
  const InequalityReport tri = rs_abs_bound_check(jackson_half, parse("x^3 - 0.2"), parse("x"), -1.0, 1.0, 1.0);
  EXPECT_TRUE(tri.holds);
  const InequalityReport sharp =
      rs_abs_bound_check(jackson_half, parse("sgn(x)"), parse("abs(x)"), -1.0, 1.0, 1.0);
  EXPECT_NEAR(sharp.lhs, 2.0, 1e-14);
  EXPECT_NEAR(sharp.rhs, 2.0, 1e-14);
  EXPECT_NEAR(sharp.slack, 0.0, 1e-12);
  const InequalityReport zero = rs_abs_bound_check(jackson_half, parse("0"), parse("x^2"), -1.0, 1.0, 1.0);
  EXPECT_EQ(zero.lhs, 0.0);
  EXPECT_EQ(zero.rhs, 0.0);
}

TEST(RsGruss, Examples) {
  const Expr f = parse("sgn(x)");
  const Expr u = parse("abs(x)");
  BoundParams p = grid_bounds(jackson_half, f, -1.0, 1.0);
  p.L = beta_lipschitz_estimate(jackson_half, u, -1.0, 1.0);
  const InequalityReport r = rs_gruss_check(jackson_half, f, u, -1.0, 1.0, p);
  EXPECT_NEAR(r.lhs, 2.0, 1e-12);
  EXPECT_NEAR(r.rhs, 2.0, 1e-12);
  EXPECT_TRUE(r.holds);

  BoundParams c = grid_bounds(jackson_half, parse("7"), -1.0, 1.0);
  c.L = 3.0;
  EXPECT_NEAR(rs_gruss_check(jackson_half, parse("7"), parse("x^3"), -1.0, 1.0, c).lhs, 0.0, 1e-13);
}

TEST(RsGruss, JumpTermEntersDeviation) {
  // sgn jumps by 2 at s0; the deviation subtracts it from u(b) - u(a).
  const Expr u = parse("x + sgn(x)");
  const Expr f = parse("x^2");
  BoundParams p = grid_bounds(jackson_half, f, -1.0, 1.0);
  p.L = beta_lipschitz_estimate(jackson_half, u, -1.0, 1.0);
  const InequalityReport r = rs_gruss_check(jackson_half, f, u, -1.0, 1.0, p);
  EXPECT_NEAR(r.witness.at("jump_s0"), 2.0, 1e-9);
  EXPECT_TRUE(r.holds);
}

TEST(RsGruss, Errors) {
  BoundParams p = grid_bounds(jackson_half, parse("x"), -1.0, 1.0);
  expect_code(ErrorCode::parameter_out_of_range,
              [&] { rs_gruss_check(jackson_half, parse("x"), parse("x"), -1.0, 1.0, p); });
  p.L = 10.0;
  expect_code(ErrorCode::tail_divergent,
              [&] { rs_gruss_check(jackson_half, parse("x"), parse("sin(1/x)"), -1.0, 1.0, p); });
  expect_code(ErrorCode::fixed_point_outside,
              [&] { rs_gruss_check(jackson_half, parse("x"), parse("x"), 0.0, 1.0, p); });
  RsGrussOptions boundary;
  boundary.allow_boundary_fixed_point = true;
  EXPECT_TRUE(rs_gruss_check(jackson_half, parse("x"), parse("x^2"), 0.0, 1.0, p, {}, boundary).holds);
}

TEST(RsVariants, Names) {
  for (auto v : {RsVariant::continuous_u, RsVariant::lipschitz_grid, RsVariant::dbeta_sup,
                 RsVariant::nonneg_weight, RsVariant::trapezoid}) {
    EXPECT_EQ(parse_rs_variant(to_string(v)), v);
  }
  EXPECT_FALSE(parse_rs_variant("bogus").has_value());
}

TEST(RsVariants, Examples) {
  expect_code(ErrorCode::hypothesis_violated, [] {
    rs_gruss_variant_check(jackson_half, parse("x^2"), parse("x"), -1.0, 1.0, RsVariant::trapezoid);
  });
  const InequalityReport weight = rs_gruss_variant_check(jackson_half, parse("x^3 - x"), parse("1"),
                                                         -1.0, 1.0, RsVariant::nonneg_weight);
  EXPECT_NEAR(weight.lhs, 0.0, 1e-10);
  const InequalityReport sup = rs_gruss_variant_check(jackson_half, parse("sgn(x)"), parse("x^2"),
                                                      -1.0, 1.0, RsVariant::dbeta_sup);
  EXPECT_TRUE(sup.holds);
  EXPECT_GE(sup.slack, 0.0);
}

TEST(RsVariants, Hypotheses) {
  expect_code(ErrorCode::hypothesis_violated, [] {
    rs_gruss_variant_check(jackson_half, parse("x"), parse("sgn(x)"), -1.0, 1.0, RsVariant::continuous_u);
  });
  expect_code(ErrorCode::hypothesis_violated, [] {
    rs_gruss_variant_check(jackson_half, parse("x"), parse("x - 5"), -1.0, 1.0, RsVariant::nonneg_weight);
  });
  const InequalityReport trap =
      rs_gruss_variant_check(hahn_half, parse("x^2"), parse("x"), 0.0, 4.0, RsVariant::trapezoid);
  EXPECT_TRUE(trap.holds);
  const InequalityReport grid =
      rs_gruss_variant_check(jackson_half, parse("x"), parse("x^2"), 0.0, 1.0, RsVariant::lipschitz_grid);
  EXPECT_TRUE(grid.holds);
}

TEST(Sharpness, Examples) {
  struct Row {
    BetaMap map;
    double a;
    double b;
  };
  for (const Row& row : {Row{jackson_half, -1.0, 1.0}, Row{make_jackson(0.9), -3.0, 3.0},
                         Row{hahn_half, 0.0, 4.0}}) {
    auto [rs, gr] = sharpness_demo(row.map, row.a, row.b);
    EXPECT_NEAR(rs.lhs, row.b - row.a, 1e-8);
    EXPECT_NEAR(rs.rhs, row.b - row.a, 1e-8);
    EXPECT_LE(std::fabs(rs.slack), 1e-8);
    EXPECT_LE(std::fabs(gr.slack), 1e-8);
    EXPECT_TRUE(rs.holds);
    EXPECT_TRUE(gr.holds);
  }
  expect_code(ErrorCode::midpoint_not_fixed_point, [] { sharpness_demo(jackson_half, -1.0, 3.0); });
}

// --- properties -----------------------------------------------------------

TEST(Property, PreGrussChain) {
  gen::Rng rng(51);
  for (int i = 0; i < 100; ++i) {
    const BetaMap m = make_hahn(rng.uniform(0.2, 0.85), rng.coin() ? 0.0 : rng.uniform(0.0, 1.0));
    const double a = m.s0() - rng.uniform(0.25, 2.0);
    const double b = m.s0() + rng.uniform(0.25, 2.0);
    const Expr f = parse(gen::polynomial_text(rng, m.s0(), 3));
    const Expr g = parse(gen::polynomial_text(rng, m.s0(), 3));
    auto [first, second] = pre_gruss_check(m, f, g, a, b, grid_bounds(m, f, a, b));
    ASSERT_LE(first.lhs, first.rhs + first.tol_report);
    ASSERT_LE(first.rhs, second.rhs + 1e-10);
  }
}

TEST(Property, ScalingCovariance) {
  gen::Rng rng(52);
  for (int i = 0; i < 100; ++i) {
    const BetaMap m = make_jackson(rng.uniform(0.2, 0.85));
    const double a = -rng.uniform(0.25, 2.0);
    const double b = rng.uniform(0.25, 2.0);
    const Expr f = parse(gen::polynomial_text(rng, 0.0, 3));
    const Expr g = parse(gen::polynomial_text(rng, 0.0, 3));
    const double alpha = rng.uniform(0.1, 10.0);
    const BoundParams p = grid_bounds_pair(m, f, g, a, b);
    BoundParams scaled = p;
    scaled.m *= alpha;
    scaled.M *= alpha;
    const InequalityReport base = gruss_check(m, f, g, a, b, p);
    const InequalityReport big = gruss_check(m, Expr::number(alpha) * f, g, a, b, scaled);
    ASSERT_NEAR(big.lhs, alpha * base.lhs, 1e-12 * (1.0 + big.lhs));
    ASSERT_NEAR(big.rhs, alpha * base.rhs, 1e-12 * (1.0 + big.rhs));
    ASSERT_EQ(big.holds, base.holds);
    // A slack that is zero up to rounding (constant f) has no sign.
    if (std::fabs(base.slack) > base.tol_report) {
      ASSERT_EQ(big.slack > 0.0, base.slack > 0.0);
    }
  }
}

TEST(Property, PolynomialIntegratorHasNoJump) {
  gen::Rng rng(53);
  for (int i = 0; i < 100; ++i) {
    const BetaMap m = make_hahn(rng.uniform(0.2, 0.85), rng.coin() ? 0.0 : rng.uniform(0.0, 1.0));
    const double a = m.s0() - rng.uniform(0.25, 2.0);
    const double b = m.s0() + rng.uniform(0.25, 2.0);
    const Expr u = parse(gen::polynomial_text(rng, m.s0(), 4));
    const RsIntegralResult r = rs_integral(m, parse("1"), u, a, b);
    ASSERT_LE(std::fabs(r.jump_s0), 1e-8);
    ASSERT_TRUE(r.tails_settled);
    if (std::isfinite(dbeta_sup_norm(m, u, a, b))) {
      ASSERT_LE(rs_identity_residual(m, parse(gen::polynomial_text(rng, m.s0(), 3)), u, a, b),
                1e-8 * m.scale());
    }
  }
}

TEST(Property, ReportInvariant) {
  gen::Rng rng(54);
  for (int i = 0; i < 1000; ++i) {
    const double rhs = rng.uniform(-1.0, 5.0);
    const double lhs = rhs + rng.uniform(-1e-7, 1e-7);
    const InequalityReport r = make_report("p", lhs, rhs, {});
    ASSERT_EQ(r.holds, r.slack >= -r.tol_report);
  }
}
