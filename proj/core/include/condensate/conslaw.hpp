#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "condensate/datum.hpp"
#include "condensate/frames.hpp"

namespace condensate::conslaw {

// Godunov solver for the two half-line problems in the xi variable. Both are
// brought to one canonical form by the reflection xi -> -xi on the left:
//
//   u_t - (u^{1+gamma} / (1+gamma))_xi = 0,   xi > 0,
//
// with characteristic speed -u^gamma <= 0, so everything drifts into the
// outflow boundary at xi = 0 and the far boundary is pure inflow of zero.

struct HalfLineGrid {
  std::size_t cell_count = 0;
  double cell_width = 0.0;

  double extent() const { return cell_width * static_cast<double>(cell_count); }
  double center(std::size_t i) const { return (static_cast<double>(i) + 0.5) * cell_width; }
  double edge(std::size_t i) const { return static_cast<double>(i) * cell_width; }

  /// N cells over (0, extent]. Throws unless N >= 8 and extent > 0.
  static HalfLineGrid uniform(std::size_t cell_count, double extent);
  /// N cells over 1.1 times the larger xi-image of the datum support edges.
  static HalfLineGrid covering(const InitialDatum& datum, std::size_t cell_count,
                               const GammaConfig& cfg, double margin = 1.1);
};

enum class Orientation { kLeft, kRight };

struct TracePoint {
  double t = 0.0;
  double trace_u0 = 0.0;
  double outflux_cumulative = 0.0;
};

struct HalfLineState {
  HalfLineGrid grid;
  Orientation orientation = Orientation::kRight;
  std::vector<double> cells;
  double time = 0.0;
  double outflux_ledger = 0.0;
  double initial_mass = 0.0;
  std::size_t steps = 0;
  std::vector<TracePoint> trace_history;

  double mass() const;
  /// Signed xi of cell i in the unreflected problem.
  double signed_center(std::size_t i) const;
};

/// Cell averages of u_{I,L}, u_{I,R}: the datum mass on each cell's x-image
/// divided by the cell width. Throws Error(kSupportOverflow) when the
/// datum support does not fit inside the grid.
std::pair<HalfLineState, HalfLineState> init_from_datum(const InitialDatum& datum,
                                                         const HalfLineGrid& grid,
                                                         const GammaConfig& cfg);

/// u^{1+gamma} / (1+gamma) for u >= 0.
double godunov_flux(double u_upwind, const GammaConfig& cfg);

/// Interface flux between cells holding u_left and u_right. All canonical
/// speeds are <= 0, so the Godunov state is the right (downwind) cell.
double interface_flux(double u_left, double u_right, const GammaConfig& cfg);

/// Self-similar entropy solution of the canonical Riemann problem at
/// xi / t = xi_over_t: a shock of Rankine-Hugoniot speed when u_l < u_r, a
/// rarefaction fan u = (-xi/t)^{1/gamma} when u_l > u_r.
double riemann_exact(double u_l, double u_r, double xi_over_t, const GammaConfig& cfg);

/// Speed floor in the CFL denominator (zero state).
inline constexpr double kSpeedFloor = 1e-14;

/// One explicit conservative update. dt = cfl dxi / max(max u^gamma, floor),
/// capped at max_dt. Outflux through xi = 0 accumulates in outflux_ledger and
/// each step appends (t, cells[0], ledger) to trace_history.
/// Throws Error(kCflViolation) unless cfl is in (0, 1].
HalfLineState step(HalfLineState state, double cfl, const GammaConfig& cfg,
                   double max_dt = std::numeric_limits<double>::infinity());

/// Time step the next call to step() would take, before capping.
double stable_dt(const HalfLineState& state, double cfl, const GammaConfig& cfg);

/// Snapshot callback. Snapshots are taken at the start time, at every
/// multiple of the cadence strictly inside (start, t_end), and at t_end.
/// Interior snapshots are linear interpolations between the two steps that
/// bracket them, so the cadence never changes the stepping sequence.
/// Snapshot states carry an empty trace_history.
using Observer = std::function<void(const HalfLineState&)>;

HalfLineState run_until(HalfLineState state, double t_end, double cfl, const GammaConfig& cfg,
                        double cadence = 0.0, const Observer& observer = {});

/// Discrete total variation including the jumps to zero at both ends.
double total_variation(const HalfLineState& state);

/// Time of the first trace_history entry whose trace exceeds threshold.
std::optional<double> first_trace_crossing(const HalfLineState& state, double threshold);

}  // namespace condensate::conslaw
