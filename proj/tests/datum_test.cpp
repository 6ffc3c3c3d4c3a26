#include <gtest/gtest.h>

#include <cmath>

#include "condensate/datum.hpp"
#include "condensate/errors.hpp"

namespace condensate {
namespace {

TEST(Datum, Example36) {
  const InitialDatum d = InitialDatum::example36(1.0);
  EXPECT_DOUBLE_EQ(d.support_lo(), 0.0);
  EXPECT_DOUBLE_EQ(d.support_hi(), 0.5);
  EXPECT_DOUBLE_EQ(d(0.25), 1.0);
  EXPECT_DOUBLE_EQ(d(0.75), 0.0);
  EXPECT_NEAR(d.mass(), 0.5, 1e-15);
  EXPECT_NEAR(d.mass_left(), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(d.sup_value(), 1.0);
}

TEST(Datum, PiecewiseConstantIntegrateIsExact) {
  const InitialDatum d = InitialDatum::piecewise_constant({-1.0, 0.5, 2.0}, {2.0, 0.5});
  EXPECT_NEAR(d.mass(), 3.0 + 0.75, 1e-14);
  EXPECT_NEAR(d.mass_left(), 2.0, 1e-14);
  EXPECT_NEAR(d.integrate(0.0, 1.0), 1.0 + 0.25, 1e-14);
  EXPECT_NEAR(d.bv_bound(), 2.0 + 1.5 + 0.5, 1e-14);
}

TEST(Datum, PiecewiseLinear) {
  const InitialDatum d = InitialDatum::piecewise_linear({0.0, 1.0, 2.0}, {0.0, 2.0, 0.0});
  EXPECT_NEAR(d(0.5), 1.0, 1e-15);
  EXPECT_NEAR(d.derivative(0.5), 2.0, 1e-12);
  EXPECT_NEAR(d.mass(), 2.0, 1e-14);
  EXPECT_NEAR(d.integrate(0.0, 0.5), 0.25, 1e-14);
}

TEST(Datum, FromFunctionUsesFiniteDifferences) {
  const InitialDatum d =
      InitialDatum::from_function(0.0, 1.0, [](double x) { return 1.0 - x * x; });
  EXPECT_NEAR(d.derivative(0.5), -1.0, 1e-8);
  EXPECT_NEAR(d.mass(), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(d.sup_value(), 1.0, 1e-6);
}

TEST(Datum, RejectsBadInput) {
  EXPECT_THROW(InitialDatum::piecewise_constant({0.0, 1.0}, {-1.0}), Error);
  EXPECT_THROW(InitialDatum::piecewise_constant({0.0, 1.0, 2.0}, {1.0, 0.0, 1.0}), Error);
  EXPECT_THROW(InitialDatum::piecewise_constant({0.0, 1.0, 2.0, 3.0}, {1.0, 0.0, 1.0}), Error);
  EXPECT_THROW(InitialDatum::piecewise_constant({1.0, 0.0}, {1.0}), Error);
  EXPECT_THROW(InitialDatum::example36(-1.0), Error);
  try {
    InitialDatum::piecewise_constant({0.0, 1.0}, {0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kZeroDatum);
  }
}

TEST(Datum, TrimsVacuumEnds) {
  const InitialDatum d = InitialDatum::piecewise_constant({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 0.0});
  EXPECT_DOUBLE_EQ(d.support_lo(), 1.0);
  EXPECT_DOUBLE_EQ(d.support_hi(), 2.0);
}

}  // namespace
}  // namespace condensate
