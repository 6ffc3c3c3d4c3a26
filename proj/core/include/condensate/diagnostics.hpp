#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "condensate/datum.hpp"
#include "condensate/frames.hpp"
#include "condensate/measure.hpp"

namespace condensate::measure {

// Discrete checks of the entropy-measure-solution properties on a series of
// snapshots:
//
//   In   initial cell masses match the datum
//   X1   continuity (largest jump of X between adjacent z nodes)
//   X2   X non-decreasing
//   X3   finite nonzero one-sided slopes off the plateau
//   X4   slope blows up at z = 0 when X(0) < 0            (t > 0 only)
//   X5   slope blows up at z = M when X(M) > 0            (t > 0 only)
//   Pl   plateau width equals the Dirac weight to one z cell
//   Ol   slope jumps increase where X < 0, decrease where X > 0
//   Eq   discrete L1 residual of X_t |X_z|^gamma + X off the plateau

struct DiagnosticOptions {
  /// Datum for the (In) check; skipped when empty.
  std::optional<InitialDatum> datum;
  double in_tolerance = 1e-8;
  /// Adjacent X gaps above this fraction of the support diameter are checked
  /// for refinement: a jump is flagged when the largest gap on the grid is
  /// still above continuity_ratio times the largest gap over two z cells.
  /// Holder edges (infinite slope) shrink under refinement and pass.
  double continuity_tolerance = 0.05;
  double continuity_ratio = 0.9;
  /// Adjacent-slope ratio that flags a candidate slope jump.
  double jump_ratio = 3.0;
  /// Each side of a candidate jump must be smooth to within this ratio.
  double smooth_ratio = 1.5;
  /// The (Eq) residual uses a one-sided time difference between snapshots,
  /// so it is first order in their spacing dt. Allowed relative residual:
  /// eq_rate * gamma * dt + eq_floor.
  double eq_rate = 1.0;
  double eq_floor = 0.01;
  /// Cells excluded next to the plateau and the support edges.
  std::size_t edge_band = 2;
};

struct Violation {
  std::string property;
  double time = 0.0;
  double z = 0.0;
  std::string detail;
};

struct DiagnosticReport {
  std::vector<Violation> violations;
  bool in_checked = false;
  double in_error = 0.0;
  /// Relative (Eq) residual per snapshot after the first.
  std::vector<double> eq_residuals;
  std::size_t snapshots = 0;

  std::size_t count(const std::string& property) const;
  bool ok() const { return violations.empty(); }
};

/// Never throws on a violating series; all findings land in the report.
/// Throws Error(kInvalidArgument) only for malformed input (empty or
/// mismatched series, non-increasing times, z grids that differ in size).
DiagnosticReport check_entropy_measure(std::span<const MeasureState> ms_series,
                                       std::span<const PseudoInverse> ps_series,
                                       const GammaConfig& cfg,
                                       const DiagnosticOptions& options = {});

/// Slope-jump candidates of one pseudo-inverse that survive the smoothness
/// filter and also show up on the 2x coarser sub-grid. Exposed for tests.
struct SlopeJump {
  std::size_t node = 0;
  double z = 0.0;
  double x = 0.0;
  double slope_left = 0.0;
  double slope_right = 0.0;
};
std::vector<SlopeJump> detect_slope_jumps(const PseudoInverse& ps,
                                          const DiagnosticOptions& options = {});

/// Relative L1 residual of X_t |X_z|^gamma + X at `now`, with a backward
/// difference in time against `before` and centered differences in z.
double eq_residual(const PseudoInverse& before, const PseudoInverse& now, const GammaConfig& cfg,
                   std::size_t edge_band = 2);

}  // namespace condensate::measure
