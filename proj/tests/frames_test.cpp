#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "condensate/datum.hpp"
#include "condensate/errors.hpp"
#include "condensate/frames.hpp"

namespace condensate {
namespace {

TEST(Frames, TimeMapAtZeroAndLn2) {
  EXPECT_EQ(time_original_to_driftfree(0.0, {2.0, 3}), 0.0);
  EXPECT_NEAR(time_original_to_driftfree(std::log(2.0), {1.0, 1}), 1.0, 1e-15);
}

TEST(Frames, TimeMapRoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> tau(0.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const GammaConfig cfg{0.5 + 0.01 * i, 1 + i % 3};
    const double s = tau(rng);
    const double back = time_driftfree_to_original(time_original_to_driftfree(s, cfg), cfg);
    EXPECT_NEAR(back, s, 1e-12 * std::max(1.0, s));
  }
}

TEST(Frames, DensityMapExamples) {
  const GammaConfig cfg{1.0, 1};
  const FramePoint id = density_original_to_driftfree({1.0, 0.0, 3.0, Frame::kOriginal}, cfg);
  EXPECT_DOUBLE_EQ(id.coordinate, 1.0);
  EXPECT_DOUBLE_EQ(id.time, 0.0);
  EXPECT_DOUBLE_EQ(id.amplitude, 3.0);

  const FramePoint p = density_original_to_driftfree({1.0, std::log(2.0), 4.0, Frame::kOriginal}, cfg);
  EXPECT_NEAR(p.coordinate, 2.0, 1e-14);
  EXPECT_NEAR(p.time, 1.0, 1e-14);
  EXPECT_NEAR(p.amplitude, 2.0, 1e-14);
  EXPECT_EQ(p.frame, Frame::kDriftFree);

  const FramePoint q = density_driftfree_to_original(p, cfg);
  EXPECT_NEAR(q.coordinate, 1.0, 1e-14);
  EXPECT_NEAR(q.time, std::log(2.0), 1e-14);
  EXPECT_NEAR(q.amplitude, 4.0, 1e-14);
}

TEST(Frames, DensityMapRejectsWrongFrame) {
  EXPECT_THROW(density_original_to_driftfree({1.0, 0.0, 1.0, Frame::kDriftFree}, {}), Error);
}

TEST(Frames, DensityMapPreservesMass) {
  // Uniform density on [0, 1] at tau = 1: f(v) dv pushed to rho(x) dx.
  const GammaConfig cfg{1.0, 1};
  const double tau = 1.0;
  const auto f = [](double v) { return v >= 0.0 && v <= 1.0 ? 1.0 : 0.0; };
  const double before = gauss_legendre8(f, 0.0, 1.0);
  const double e = std::exp(tau);
  const auto rho = [&](double x) {
    return density_original_to_driftfree({x / e, tau, f(x / e), Frame::kOriginal}, cfg).amplitude;
  };
  const double after = gauss_legendre8(rho, 0.0, e);
  EXPECT_NEAR(before, after, 1e-10);
}

TEST(Frames, XiMapExamples) {
  const GammaConfig one{1.0, 1};
  EXPECT_EQ(x_of_xi(0.0, one), 0.0);
  EXPECT_NEAR(x_of_xi(2.0, one), 2.0, 1e-14);
  EXPECT_NEAR(xi_of_x(2.0, one), 2.0, 1e-14);
  EXPECT_EQ(xi_of_x(0.0, one), 0.0);
  for (double g : {0.3, 0.5, 1.0, 2.0, 4.0}) {
    EXPECT_NEAR(x_of_xi(1.0 / g, {g, 1}), 1.0 / (1.0 + g), 1e-14);
  }
}

TEST(Frames, XiMapRoundTripOddAndIncreasing) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> x(-5.0, 5.0);
  for (double g : {0.5, 1.0, 2.0}) {
    const GammaConfig cfg{g, 1};
    for (int i = 0; i < 100; ++i) {
      const double v = x(rng);
      if (v == 0.0) continue;
      EXPECT_NEAR(x_of_xi(xi_of_x(v, cfg), cfg), v, 1e-12 * std::abs(v));
    }
    double prev = x_of_xi(-3.0, cfg);
    for (int i = 1; i <= 600; ++i) {
      const double xi = -3.0 + 0.01 * i;
      const double cur = x_of_xi(xi, cfg);
      EXPECT_GT(cur, prev);
      EXPECT_NEAR(x_of_xi(-xi, cfg), -cur, 1e-15 * std::max(1.0, std::abs(cur)));
      prev = cur;
    }
  }
  std::uniform_real_distribution<double> gamma(0.2, 4.0);
  for (int i = 0; i < 200; ++i) {
    const GammaConfig cfg{gamma(rng), 1};
    const double v = x(rng);
    EXPECT_NEAR(xi_of_x(x_of_xi(v, cfg), cfg), v, 1e-12 * std::abs(v));
  }
}

TEST(Frames, DerivativesMatchFiniteDifferences) {
  for (double g : {0.5, 1.0, 2.0}) {
    const GammaConfig cfg{g, 1};
    for (double xi : {0.3, 1.0, 1.7}) {
      const double h = 1e-6;
      const double fd = (x_of_xi(xi + h, cfg) - x_of_xi(xi - h, cfg)) / (2 * h);
      EXPECT_NEAR(dx_dxi(xi, cfg), fd, 1e-7);
      const double x = x_of_xi(xi, cfg);
      EXPECT_NEAR(dxi_dx(x, cfg) * dx_dxi(xi, cfg), 1.0, 1e-12);
    }
  }
}

TEST(Frames, UToRho) {
  const GammaConfig cfg{1.0, 1};
  EXPECT_EQ(u_to_rho(0.0, 0.7, cfg), 0.0);
  EXPECT_NEAR(u_to_rho(6.0, 2.0, cfg), 3.0, 1e-14);
  EXPECT_NEAR(rho_to_u(3.0, 2.0, cfg), 6.0, 1e-14);
  EXPECT_THROW(u_to_rho(1.0, 0.0, cfg), Error);
  EXPECT_THROW(dxi_dx(0.0, cfg), Error);
}

TEST(Frames, ExampleDatumMassInBothVariables) {
  for (double g : {0.5, 1.0, 2.0}) {
    const GammaConfig cfg{g, 1};
    const auto u = [&](double xi) { return std::pow(g * xi, 1.0 / g); };
    double in_xi = 0.0;
    // Panels halve toward xi = 0, where u is only Hoelder for g > 1.
    for (int k = 0; k < 60; ++k) {
      in_xi += gauss_legendre8(u, std::ldexp(1.0, -k - 1) / g, std::ldexp(1.0, -k) / g);
    }
    // rho = xi'(x) u(xi(x)) must be the indicator of [0, 1/(1+g)].
    for (double x : {0.01, 0.1, 0.3}) {
      if (x < 1.0 / (1.0 + g)) {
        EXPECT_NEAR(u_to_rho(u(xi_of_x(x, cfg)), x, cfg), 1.0, 1e-12);
      }
    }
    EXPECT_NEAR(in_xi, 1.0 / (1.0 + g), 1e-8);
  }
}

TEST(Frames, ConfigValidation) {
  EXPECT_THROW((GammaConfig{0.0, 1}).validate(), Error);
  EXPECT_THROW((GammaConfig{1.0, 0}).validate(), Error);
  EXPECT_THROW((GammaConfig{1.0, 3}).require_one_dimensional(), Error);
  EXPECT_NO_THROW((GammaConfig{1.0, 1}).require_one_dimensional());
}

}  // namespace
}  // namespace condensate
