#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "condensate/conslaw.hpp"
#include "condensate/errors.hpp"
#include "condensate/measure.hpp"

namespace condensate::measure {
namespace {

// Unit-mass pseudo-inverse of the revisited example, written out here so the
// test does not lean on the oracle module.
double x_unit(double z, double t, double g) {
  if (g * t < 1.0 && z <= 1.0 - g * t) return z * std::pow(1.0 - g * t, 1.0 / g);
  const double inner = 1.0 - std::pow(g * t, 1.0 / (1.0 + g)) * std::pow(1.0 - z, g / (1.0 + g));
  return std::pow(std::max(inner, 0.0), (1.0 + g) / g);
}

std::vector<double> uniform_edges(double a, double b, std::size_t cells) {
  std::vector<double> e(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) e[i] = a + (b - a) * i / cells;
  return e;
}

struct Run {
  conslaw::HalfLineState left, right;
};

Run run_example(double g, std::size_t n, double t) {
  const GammaConfig cfg{g, 1};
  const auto d = InitialDatum::example36(g);
  auto [l, r] = conslaw::init_from_datum(d, conslaw::HalfLineGrid::covering(d, n, cfg), cfg);
  return {conslaw::run_until(std::move(l), t, 0.9, cfg), conslaw::run_until(std::move(r), t, 0.9, cfg)};
}

TEST(Measure, AssembleBothZero) {
  conslaw::HalfLineState z;
  z.grid = conslaw::HalfLineGrid::uniform(16, 1.0);
  z.cells.assign(16, 0.0);
  auto l = z;
  l.orientation = conslaw::Orientation::kLeft;
  const auto ms = assemble(l, z, {1.0, 1});
  EXPECT_EQ(ms.dirac_mass, 0.0);
  EXPECT_EQ(ms.ac_mass(), 0.0);
  EXPECT_EQ(ms.cells.size(), 32u);
}

TEST(Measure, AssembleRejectsTimeMismatch) {
  auto run = run_example(1.0, 64, 0.5);
  run.left.time = 0.4;
  try {
    assemble(run.left, run.right, {1.0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTimeMismatch);
  }
}

TEST(Measure, CondensedMassAtTwo) {
  const auto run = run_example(1.0, 4096, 2.0);
  const auto ms = assemble(run.left, run.right, {1.0, 1});
  EXPECT_NEAR(ms.dirac_mass, 0.25, 0.01 * 0.25);
  EXPECT_NEAR(ms.total_mass, 0.5, 1e-12);
}

TEST(Measure, TwoMassAccountingsAgree) {
  const GammaConfig cfg{1.0, 1};
  const auto d = InitialDatum::piecewise_linear({-0.6, 0.1, 0.8}, {0.4, 1.2, 0.3});
  auto [l, r] = conslaw::init_from_datum(d, conslaw::HalfLineGrid::covering(d, 512, cfg), cfg);
  // Outer cells straddle the datum edges, so confinement is against t = 0.
  const auto initial = assemble(l, r, cfg);
  for (double t : {0.3, 0.9, 2.0, 5.0}) {
    l = conslaw::run_until(std::move(l), t, 0.9, cfg);
    r = conslaw::run_until(std::move(r), t, 0.9, cfg);
    const auto ms = assemble(l, r, cfg);
    // Quadrature of rho = xi'(x) u over each cell's x-image against the
    // ledger; cells touching the origin get geometrically graded panels.
    double quad = 0.0;
    const double h = r.grid.cell_width;
    for (const auto& c : ms.cells) {
      if (!(c.mass > 0.0)) continue;
      const double u = c.mass / h;
      const auto rho = [&](double x) { return dxi_dx(x, cfg) * u; };
      if (c.x_lo == 0.0 || c.x_hi == 0.0) {
        const double far = c.x_lo == 0.0 ? c.x_hi : c.x_lo;
        for (int k = 0; k < 60; ++k) {
          quad += std::abs(gauss_legendre8(rho, far * std::ldexp(1.0, -k - 1), far * std::ldexp(1.0, -k)));
        }
      } else {
        quad += gauss_legendre8(rho, c.x_lo, c.x_hi);
      }
    }
    EXPECT_NEAR(ms.dirac_mass, d.mass() - quad, 1e-8);
    EXPECT_NEAR(ms.dirac_mass + ms.ac_mass(), d.mass(), 1e-10);
    EXPECT_GE(ms.support_lo, initial.support_lo);
    EXPECT_LE(ms.support_hi, initial.support_hi);
  }
}

TEST(Measure, DensityBoundHolds) {
  const GammaConfig cfg{0.7, 1};
  const auto d = InitialDatum::piecewise_constant({-0.3, 0.0, 0.5}, {0.8, 1.4});
  auto [l, r] = conslaw::init_from_datum(d, conslaw::HalfLineGrid::covering(d, 400, cfg), cfg);
  double sup_u = 0.0;
  for (double v : l.cells) sup_u = std::max(sup_u, v);
  for (double v : r.cells) sup_u = std::max(sup_u, v);
  const double c = density_bound_constant(sup_u, cfg);
  for (double t : {0.5, 1.5, 4.0}) {
    l = conslaw::run_until(std::move(l), t, 0.9, cfg);
    r = conslaw::run_until(std::move(r), t, 0.9, cfg);
    for (const auto& cell : assemble(l, r, cfg).cells) {
      EXPECT_LE(cell.density * std::pow(std::abs(cell.x_center), 1.0 / 1.7), c * (1 + 1e-12));
    }
  }
}

TEST(Measure, PseudoInverseAllCondensed) {
  MeasureState ms = from_density([](double) { return 0.0; }, uniform_edges(-1.0, 1.0, 8), 0.7, 3.0);
  const auto ps = pseudo_inverse(ms, 64);
  for (double x : ps.x_values) EXPECT_EQ(x, 0.0);
  EXPECT_NEAR(ps.plateau_hi - ps.plateau_lo, 0.7, 1e-15);
  EXPECT_EQ(wasserstein_to_dirac(ms, 1.0), 0.0);
  EXPECT_EQ(wasserstein_to_dirac(ms, INFINITY), 0.0);
}

TEST(Measure, PseudoInverseRejectsTinyGrid) {
  MeasureState ms = from_density([](double) { return 1.0; }, uniform_edges(0.0, 1.0, 8), 0.0, 0.0);
  EXPECT_THROW(pseudo_inverse(ms, 8), Error);
}

TEST(Measure, PseudoInverseOfAnalyticDensity) {
  // Unit convention rho(x, t) on [0, 1] plus the Dirac weight; X must match
  // the closed form.
  const double g = 1.0;
  for (double t : {0.5, 1.0, 2.0}) {
    auto rho = [&](double x) {
      if (x <= 0.0 || x > 1.0) return 0.0;
      if (g * t < 1.0 && x <= std::pow(1.0 - g * t, (1.0 + g) / g)) {
        return std::pow(1.0 / (1.0 - g * t), 1.0 / g);
      }
      return std::pow((std::pow(x, -g / (1.0 + g)) - 1.0) / (g * t), 1.0 / g);
    };
    const double m = t > 1.0 / g ? 1.0 - std::pow(g * t, -1.0 / g) : 0.0;
    // Fine cells near the origin where rho is singular.
    std::vector<double> edges{0.0};
    for (int i = 1; i <= 8192; ++i) edges.push_back(std::pow(i / 8192.0, 2.0));
    const auto ms = from_density(rho, edges, m, t);
    EXPECT_NEAR(ms.total_mass, 1.0, 1e-6);
    const auto ps = pseudo_inverse(ms, 4096);
    double err = 0.0;
    for (std::size_t k = 0; k < ps.z_grid.size(); ++k) {
      err = std::max(err, std::abs(ps.x_values[k] - x_unit(ps.z_grid[k], t, g)));
    }
    EXPECT_LT(err, 1e-3) << "t = " << t;
  }
  // Spot values from the closed form itself.
  EXPECT_NEAR(x_unit(0.75, 1.0, 1.0), 0.25, 1e-15);
  EXPECT_NEAR(x_unit(0.3, 0.5, 1.0), 0.15, 1e-15);
}

TEST(Measure, PseudoInverseAtMatchesGrid) {
  const auto run = run_example(1.0, 256, 2.0);
  const auto ms = assemble(run.left, run.right, {1.0, 1});
  const auto ps = pseudo_inverse(ms, 101);
  for (std::size_t k = 0; k < ps.z_grid.size(); ++k) {
    EXPECT_DOUBLE_EQ(pseudo_inverse_at(ms, ps.z_grid[k]), ps.x_values[k]);
  }
  EXPECT_NEAR(ps.plateau_hi - ps.plateau_lo, ms.dirac_mass, 1e-15);
}

TEST(Measure, PseudoInverseTakesInfOnFlats) {
  // Left part, a vacuum cell, right part: X jumps over the gap.
  MeasureState ms;
  ms.cells = {{.x_lo = -2, .x_hi = -1, .x_center = -1.5, .density = 1, .mass = 1},
              {.x_lo = -1, .x_hi = 1, .x_center = 0, .density = 0, .mass = 0},
              {.x_lo = 1, .x_hi = 2, .x_center = 1.5, .density = 1, .mass = 1}};
  EXPECT_DOUBLE_EQ(pseudo_inverse_at(ms, 0.5), -1.5);
  EXPECT_DOUBLE_EQ(pseudo_inverse_at(ms, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(pseudo_inverse_at(ms, 2.0), 2.0);
}

TEST(Measure, WassersteinClosedForms) {
  const auto ms = from_density([](double) { return 1.0; }, uniform_edges(0.0, 1.0, 10), 0.0, 0.0);
  EXPECT_NEAR(wasserstein_to_dirac(ms, 1.0), 0.5, 1e-14);
  EXPECT_NEAR(wasserstein_to_dirac(ms, 2.0), std::sqrt(1.0 / 3.0), 1e-14);
  EXPECT_NEAR(wasserstein_to_dirac(ms, INFINITY), 1.0, 1e-15);
  EXPECT_THROW(wasserstein_to_dirac(ms, 0.5), Error);

  // W1 along the analytic solution is non-increasing in t.
  double prev = INFINITY;
  for (int k = 0; k <= 40; ++k) {
    const double t = 0.1 * k;
    double w = 0.0;
    for (int i = 0; i < 4000; ++i) w += x_unit((i + 0.5) / 4000, t, 1.0) / 4000;
    EXPECT_LE(w, prev + 1e-15);
    prev = w;
  }
}

TEST(Measure, OriginalFrame) {
  const GammaConfig cfg{1.0, 1};
  const auto run = run_example(1.0, 256, 0.0);
  const auto ms0 = assemble(run.left, run.right, cfg);
  const auto f0 = to_original_frame(ms0, cfg);
  EXPECT_EQ(f0.time, 0.0);
  EXPECT_EQ(f0.support_hi, ms0.support_hi);

  const auto late = run_example(1.0, 256, 3.0);
  const auto ms = assemble(late.left, late.right, cfg);
  const auto f = to_original_frame(ms, cfg);
  EXPECT_NEAR(f.time, std::log(4.0), 1e-14);
  EXPECT_NEAR(f.support_hi, ms.support_hi / 4.0, 1e-15);
  EXPECT_NEAR(f.dirac_mass + f.ac_mass(), ms.dirac_mass + ms.ac_mass(), 1e-10);
  double integral = 0.0;
  for (const auto& c : f.cells) integral += c.mass;
  EXPECT_NEAR(integral, ms.ac_mass(), 1e-10);

  const std::vector<MeasureState> series{ms0, ms};
  const auto samples = original_frame_series(series, cfg);
  ASSERT_EQ(samples.size(), 2u);
  EXPECT_NEAR(samples[1].diameter, (ms.support_hi - ms.support_lo) / 4.0, 1e-15);
}

TEST(Measure, LogLogSlope) {
  std::vector<double> x, y;
  for (int i = 1; i <= 10; ++i) {
    x.push_back(i);
    y.push_back(3.0 * std::pow(i, -1.5));
  }
  EXPECT_NEAR(loglog_slope(x, y), -1.5, 1e-12);
  EXPECT_THROW(loglog_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), Error);
}

TEST(Measure, GridEdgesAreSymmetric) {
  const auto e = xi_grid_edges(conslaw::HalfLineGrid::uniform(8, 1.0), {2.0, 1});
  ASSERT_EQ(e.size(), 17u);
  EXPECT_EQ(e[8], 0.0);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_DOUBLE_EQ(e[i], -e[16 - i]);
}

}  // namespace
}  // namespace condensate::measure
