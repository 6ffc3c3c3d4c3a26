#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "condensate/conslaw.hpp"
#include "condensate/frames.hpp"

namespace condensate::measure {

/// One absolutely continuous cell: the x-image of a xi-cell. Mass is spread
/// uniformly over [x_lo, x_hi]; density is rho sampled at the cell center.
struct AcCell {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double x_center = 0.0;
  double density = 0.0;
  double mass = 0.0;
};

/// mu(t) = m delta_0 + rho. Cells are sorted by x; left cells sit at x < 0.
struct MeasureState {
  double time = 0.0;
  double dirac_mass = 0.0;
  double total_mass = 0.0;
  std::vector<AcCell> cells;
  double support_lo = 0.0;
  double support_hi = 0.0;

  double ac_mass() const;
};

/// Pushes both half-line states through the xi-map. The Dirac weight is the
/// sum of the two outflux ledgers. Throws Error(kTimeMismatch) when the
/// states are not at the same time.
MeasureState assemble(const conslaw::HalfLineState& left, const conslaw::HalfLineState& right,
                      const GammaConfig& cfg);

/// Builds a measure from a density and a Dirac weight on the given sorted
/// x-edges (cell masses by split Gauss quadrature). Used for analytic
/// comparisons.
MeasureState from_density(const std::function<double(double)>& rho,
                          std::span<const double> x_edges, double dirac_mass, double time);

/// Sorted x-edges of the xi-grid images on both sides of the origin.
std::vector<double> xi_grid_edges(const conslaw::HalfLineGrid& grid, const GammaConfig& cfg);

struct PseudoInverse {
  double time = 0.0;
  double total_mass = 0.0;
  std::vector<double> z_grid;
  std::vector<double> x_values;
  /// z-interval on which X == 0; its width is the Dirac weight.
  double plateau_lo = 0.0;
  double plateau_hi = 0.0;

  double dz() const;
};

/// X(z) = inf{x : mu((-inf, x]) > z} on z_count uniform nodes of [0, M].
/// F is exact at cell edges and linear inside cells; the Dirac weight makes a
/// jump at x = 0. At z = M the left limit (the support edge) is returned.
PseudoInverse pseudo_inverse(const MeasureState& ms, std::size_t z_count);

/// Evaluates the same pseudo-inverse at a single z in [0, M].
double pseudo_inverse_at(const MeasureState& ms, double z);

/// W_p(mu, M delta_0) = (int_0^M |X(z)|^p dz)^{1/p}, computed cell by cell in
/// closed form. p = infinity gives max |X|.
double wasserstein_to_dirac(const MeasureState& ms, double p);

/// rho |x|^{1/(1+gamma)} <= (1+gamma)^{-1/(1+gamma)} sup u.
double density_bound_constant(double u_sup, const GammaConfig& cfg);

/// The same measure in the original (v, tau) frame: v = e^{-tau} x,
/// f = e^{tau} rho, masses unchanged. time holds tau.
MeasureState to_original_frame(const MeasureState& ms, const GammaConfig& cfg);

struct OriginalFrameSample {
  double t = 0.0;
  double tau = 0.0;
  double dirac_mass = 0.0;
  double ac_mass = 0.0;
  double support_lo = 0.0;
  double support_hi = 0.0;
  double diameter = 0.0;
  double w1_to_dirac = 0.0;
};

std::vector<OriginalFrameSample> original_frame_series(std::span<const MeasureState> series,
                                                       const GammaConfig& cfg);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace condensate::measure
