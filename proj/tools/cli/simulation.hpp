#pragma once

#include <optional>
#include <vector>

#include "condensate/conslaw.hpp"
#include "condensate/datum.hpp"
#include "condensate/measure.hpp"
#include "config.hpp"

namespace condensate::cli {

struct Simulation {
  conslaw::HalfLineGrid grid;
  /// Final states, with their full trace histories.
  conslaw::HalfLineState left;
  conslaw::HalfLineState right;
  std::vector<conslaw::HalfLineState> left_snapshots;
  std::vector<conslaw::HalfLineState> right_snapshots;
  std::vector<measure::MeasureState> measures;
  std::vector<measure::PseudoInverse> inverses;
  /// Largest initial cell average over both half-lines.
  double initial_sup = 0.0;
};

/// Runs both half-lines from the config's datum to t_end with the config's
/// cadence, assembling a measure and pseudo-inverse per snapshot. With
/// parallel set the two half-lines run on separate threads; the result is
/// identical either way.
Simulation simulate_run(const RunConfig& config, const InitialDatum& datum, bool parallel = true);

/// Earliest trace crossing over both half-lines.
std::optional<double> trace_crossing(const Simulation& sim, double threshold);

/// t_star_trace estimate: first time either trace exceeds half the initial
/// sup of u, i.e. the midpoint of the jump the trace makes when the boundary
/// switches on.
std::optional<double> t_star_trace(const Simulation& sim);

}  // namespace condensate::cli
