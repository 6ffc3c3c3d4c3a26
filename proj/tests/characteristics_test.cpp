#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "condensate/characteristics.hpp"
#include "condensate/errors.hpp"
#include "support/rk4.hpp"

namespace condensate::characteristics {
namespace {

InitialDatum tent() {
  // Symmetric, non-increasing in |x|.
  return InitialDatum::piecewise_linear({-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0});
}

TEST(Characteristics, OffSupportIsStationary) {
  const auto d = InitialDatum::example36(1.0);
  const auto s = advance(0.9, 5.0, d, {1.0, 1});
  EXPECT_DOUBLE_EQ(s.position, 0.9);
  EXPECT_DOUBLE_EQ(s.value, 0.0);
}

TEST(Characteristics, ThreeDimensionalSubstitution) {
  const auto d = InitialDatum::piecewise_constant({0.0, 1.0}, {1.0});
  const auto s = advance(0.5, 0.2, d, {1.0, 3});
  EXPECT_NEAR(s.value, 2.5, 1e-14);
  EXPECT_NEAR(s.position, 0.5 * std::pow(0.4, 2.0 / 3.0), 1e-14);
}

TEST(Characteristics, BlowUpReachedThrows) {
  const auto d = InitialDatum::example36(1.0);
  try {
    advance(0.2, 1.0, d, {1.0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBlowUpReached);
  }
}

TEST(Characteristics, MatchesRk4Integration) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto d = InitialDatum::piecewise_linear({0.0, 0.4, 1.0}, {1.5, 1.0, 0.2});
  for (int dim : {1, 3}) {
    for (double g : {0.5, 1.0, 2.0}) {
      const GammaConfig cfg{g, dim};
      const double tb = blow_up_time(d, cfg);
      for (int i = 0; i < 50; ++i) {
        const double x0 = 0.99 * unit(rng);
        const double t = 0.9 * tb * unit(rng);
        const auto s = advance(x0, t, d, cfg);
        const auto ode = testing::integrate_characteristic(x0, d(x0), t, g, dim);
        EXPECT_NEAR(s.position, ode.x, 1e-8 * std::max(std::abs(ode.x), 1e-12));
        EXPECT_NEAR(s.value, ode.u, 1e-8 * ode.u);
      }
    }
  }
}

TEST(Characteristics, BlowUpTimeClosedForm) {
  const auto unit = InitialDatum::piecewise_constant({0.0, 1.0}, {1.0});
  EXPECT_DOUBLE_EQ(blow_up_time(unit, {1.0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(blow_up_time(unit, {1.0, 3}), 1.0 / 3.0);
  const auto two = InitialDatum::piecewise_constant({0.0, 1.0}, {2.0});
  EXPECT_DOUBLE_EQ(blow_up_time(two, {2.0, 1}), 0.125);
  EXPECT_GT(blow_up_time(unit, {2.0, 1}), blow_up_time(two, {2.0, 1}));
}

TEST(Characteristics, ShockTimes) {
  EXPECT_FALSE(first_shock_time(tent(), {1.0, 1}).time.has_value());
  EXPECT_FALSE(first_shock_time(InitialDatum::example36(1.0), {1.0, 1}).time.has_value());

  // Increasing on x0 > 0: the Jacobian vanishes before blow-up.
  const auto rising = InitialDatum::piecewise_linear({0.0, 1.0}, {0.5, 1.0});
  const GammaConfig cfg{1.0, 1};
  const ShockReport r = first_shock_time(rising, cfg);
  ASSERT_TRUE(r.time.has_value());
  EXPECT_LT(*r.time, blow_up_time(rising, cfg));
  // Independent dense scan of 1 - t [g f^g + (1+g) x0 (f^g)'] = 0.
  double best = INFINITY;
  for (int i = 0; i <= 100000; ++i) {
    const double x0 = i / 100000.0;
    const double f = 0.5 + 0.5 * x0;
    const double k = f + 2.0 * x0 * 0.5;
    if (k > 0) best = std::min(best, 1.0 / k);
  }
  EXPECT_NEAR(*r.time, best, 1e-5);
  EXPECT_NEAR(smooth_validity_time(rising, cfg), *r.time, 1e-15);
}

TEST(Characteristics, SmoothEvaluatorRegionA) {
  for (double g : {0.5, 1.0, 2.0}) {
    const auto d = InitialDatum::example36(g);
    const GammaConfig cfg{g, 1};
    const double t = 0.5 / g;
    const double edge = std::pow(1.0 - g * t, (1.0 + g) / g) / (1.0 + g);
    for (double frac : {0.1, 0.5, 0.9}) {
      EXPECT_NEAR(evaluate_smooth(frac * edge, t, d, cfg), std::pow(1.0 / (1.0 - g * t), 1.0 / g),
                  1e-12);
    }
    EXPECT_DOUBLE_EQ(evaluate_smooth(0.3 / (1.0 + g), 0.0, d, cfg), 1.0);
    EXPECT_EQ(evaluate_smooth(2.0, t, d, cfg), 0.0);
    try {
      evaluate_smooth(0.5 * (edge + 1.0 / (1.0 + g)), t, d, cfg);
      FAIL() << "fan region has no classical foot";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kNoBracket);
    }
  }
}

TEST(Characteristics, SmoothEvaluatorInvertsCharacteristics) {
  const GammaConfig cfg{1.0, 1};
  const SmoothEvaluator eval(tent(), cfg);
  const double t = 0.6 * eval.validity_time();
  for (double x0 : {-0.8, -0.3, 0.05, 0.4, 0.9}) {
    const auto s = advance(x0, t, tent(), cfg);
    EXPECT_NEAR(eval.foot(s.position, t), x0, 1e-10);
    EXPECT_NEAR(eval(s.position, t), s.value, 1e-9 * s.value);
  }
  EXPECT_THROW(eval(0.1, eval.validity_time()), Error);
}

TEST(Characteristics, ConfinementAndMonotoneGrowth) {
  const auto d = InitialDatum::piecewise_linear({-0.5, 0.2, 1.0}, {0.3, 1.0, 0.1});
  for (int dim : {1}) {
    const GammaConfig cfg{1.5, dim};
    const double tb = blow_up_time(d, cfg);
    for (int i = 0; i <= 40; ++i) {
      const double x0 = -0.5 + 1.5 * i / 40.0;
      double prev = d(x0);
      for (int k = 1; k < 10; ++k) {
        const double t = 0.1 * k * tb;
        const auto s = advance(x0, t, d, cfg);
        EXPECT_GE(s.value, prev);
        EXPECT_LE(std::abs(s.position), std::abs(x0) + 1e-15);
        EXPECT_GE(s.position * x0, 0.0);
        prev = s.value;
      }
    }
  }
  EXPECT_EQ(advance(0.0, 0.3, d, {1.5, 1}).position, 0.0);
}

TEST(Characteristics, ZeroDatumRejected) {
  EXPECT_THROW(InitialDatum::piecewise_constant({0.0, 1.0}, {0.0}), Error);
}

}  // namespace
}  // namespace condensate::characteristics
