#include <gtest/gtest.h>

#include <cmath>

#include "betacalc/beta_map.hpp"
#include "betacalc/error.hpp"
#include "betacalc/expr.hpp"
#include "support.hpp"

using namespace betacalc;

TEST(Hahn, FixedPoint) {
  EXPECT_EQ(make_hahn(0.5, 0.0).s0(), 0.0);
  EXPECT_EQ(make_hahn(0.5, 1.0).s0(), 2.0);
  EXPECT_EQ(make_hahn(0.5, 0.0).kind(), MapKind::jackson);
  EXPECT_EQ(make_hahn(0.5, 1.0).kind(), MapKind::hahn);
}

TEST(Hahn, RejectsBadParameters) {
  for (auto [q, w] : {std::pair{1.2, 0.0}, {1.0, 0.0}, {0.0, 0.0}, {-0.5, 0.0}, {0.5, -1.0},
                      {std::nan(""), 0.0}, {0.5, INFINITY}}) {
    try {
      make_hahn(q, w);
      ADD_FAILURE() << q << ", " << w;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::parameter_out_of_range);
    }
  }
}

TEST(Iterate, Examples) {
  EXPECT_EQ(iterate(make_hahn(0.5, 1.0), 0.0, 3), 1.75);
  EXPECT_EQ(iterate(make_jackson(0.5), 8.0, 3), 1.0);
  EXPECT_EQ(iterate(make_hahn(0.3, 0.7), 3.25, 0), 3.25);
}

TEST(Orbit, Examples) {
  const Orbit o = orbit(make_jackson(0.5), 1.0, 1e-3, 10000);
  ASSERT_EQ(o.points.size(), 11u);
  EXPECT_EQ(o.points.back(), std::ldexp(1.0, -10));
  EXPECT_TRUE(o.converged);
  EXPECT_DOUBLE_EQ(o.terminal_gap, std::ldexp(1.0, -10));

  const Orbit fixed = orbit(make_hahn(0.5, 1.0), 2.0);
  EXPECT_EQ(fixed.points.size(), 1u);
  EXPECT_TRUE(fixed.converged);

  const Orbit slow = orbit(make_jackson(0.999999), 1.0, 1e-12, 10);
  EXPECT_FALSE(slow.converged);
  EXPECT_EQ(slow.points.size(), 11u);
}

TEST(Custom, LinearContraction) {
  const BetaMap m = make_custom(parse("0.5*x"), {-2.0, 2.0});
  EXPECT_EQ(m.kind(), MapKind::custom);
  EXPECT_NEAR(m.s0(), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(m(1.0), 0.5);
}

TEST(Custom, ShiftedAndNonlinear) {
  EXPECT_NEAR(make_custom(parse("x/2 + 1"), {-10.0, 10.0}).s0(), 2.0, 1e-12);
  const BetaMap m = make_custom(parse("0.5*x + 0.1*sin(x) + 0.3"), {-5.0, 5.0});
  EXPECT_LE(std::fabs(m(m.s0()) - m.s0()), 1e-12);
}

TEST(Custom, SquareOnUnitInterval) {
  try {
    make_custom(parse("x^2"), {0.1, 0.9});
    FAIL() << "x^2 on [0.1, 0.9] must not validate";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::validation_failed);
    EXPECT_FALSE(e.invariant().empty());
  }
}

TEST(Custom, ExpandingMapReportsViolatingWitness) {
  try {
    make_custom(parse("2*x"), {-1.0, 1.0});
    FAIL() << "2x is expanding";
  } catch (const ValidationError& e) {
    ASSERT_TRUE(e.witness().has_value());
    const double t = *e.witness();
    // The witness must itself violate (t - s0)(beta(t) - t) < 0 with s0 = 0.
    EXPECT_GT(t * (2.0 * t - t), 0.0);
  }
}

TEST(Custom, DecreasingMapFails) {
  EXPECT_THROW(make_custom(parse("-0.5*x"), {-1.0, 1.0}), ValidationError);
}

TEST(Custom, NoFixedPoint) {
  try {
    make_custom(parse("x - 1"), {-1.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.code() == ErrorCode::no_fixed_point || e.code() == ErrorCode::validation_failed)
        << e.what();
  }
}

TEST(Property, OrbitMonotoneTowardFixedPoint) {
  gen::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const BetaMap m = make_hahn(rng.uniform(0.05, 0.95), rng.coin() ? 0.0 : rng.uniform(0.0, 3.0));
    const double x = m.s0() + rng.uniform(-5.0, 5.0);
    const Orbit o = orbit(m, x);
    for (std::size_t k = 1; k < o.points.size(); ++k) {
      if (x < m.s0()) {
        ASSERT_GT(o.points[k], o.points[k - 1]);
        ASSERT_LE(o.points[k], m.s0());
      } else {
        ASSERT_LT(o.points[k], o.points[k - 1]);
        ASSERT_GE(o.points[k], m.s0());
      }
    }
    EXPECT_TRUE(o.converged);
  }
}

TEST(Property, FixedPointResidual) {
  gen::Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const BetaMap m = make_hahn(rng.uniform(0.05, 0.95), rng.uniform(0.0, 3.0));
    EXPECT_LE(std::fabs(m(m.s0()) - m.s0()), 1e-12 * m.scale());
  }
  for (const char* e : {"0.5*x", "x/3 + 2", "0.5*x + 0.1*sin(x)"}) {
    const BetaMap m = make_custom(parse(e), {-6.0, 6.0});
    EXPECT_LE(std::fabs(m(m.s0()) - m.s0()), 1e-12 * m.scale()) << e;
  }
}

TEST(Property, SignConditionOnSamples) {
  gen::Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    const BetaMap m = make_hahn(rng.uniform(0.05, 0.95), rng.uniform(0.0, 3.0));
    for (int j = 0; j < 1000; ++j) {
      const double t = m.s0() + rng.uniform(-10.0, 10.0);
      if (t == m.s0()) continue;
      ASSERT_LT((t - m.s0()) * (m(t) - t), 0.0);
    }
  }
}

TEST(Property, IterateComposes) {
  gen::Rng rng(14);
  for (int i = 0; i < 200; ++i) {
    const BetaMap m = make_hahn(rng.uniform(0.05, 0.95), rng.uniform(0.0, 3.0));
    const double x = rng.uniform(-10.0, 10.0);
    const int j = rng.integer(0, 32);
    const int k = rng.integer(0, 32);
    ASSERT_EQ(iterate(m, x, j + k), iterate(m, iterate(m, x, j), k));
  }
}
