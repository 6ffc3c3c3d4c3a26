#include "simulation.hpp"

#include <algorithm>
#include <future>

#include "condensate/errors.hpp"

namespace condensate::cli {
namespace {

struct Lane {
  conslaw::HalfLineState final;
  std::vector<conslaw::HalfLineState> snapshots;
};

Lane run_lane(conslaw::HalfLineState state, const RunConfig& config, const GammaConfig& cfg) {
  Lane lane;
  auto keep = [&](const conslaw::HalfLineState& s) { lane.snapshots.push_back(s); };
  lane.final = conslaw::run_until(std::move(state), config.t_end, config.cfl, cfg,
                                  config.snapshot_cadence, keep);
  if (lane.snapshots.empty()) {
    conslaw::HalfLineState s = lane.final;
    s.trace_history.clear();
    lane.snapshots.push_back(std::move(s));
  }
  return lane;
}

}  // namespace

Simulation simulate_run(const RunConfig& config, const InitialDatum& datum, bool parallel) {
  config.validate();
  const GammaConfig cfg = config.gamma_config();
  cfg.require_one_dimensional();

  Simulation sim;
  sim.grid = conslaw::HalfLineGrid::covering(datum, config.grid_cells, cfg);
  auto [left0, right0] = conslaw::init_from_datum(datum, sim.grid, cfg);
  for (const auto* s : {&left0, &right0}) {
    for (double v : s->cells) sim.initial_sup = std::max(sim.initial_sup, v);
  }

  Lane left, right;
  if (parallel) {
    auto job = std::async(std::launch::async, run_lane, std::move(left0), std::cref(config), cfg);
    right = run_lane(std::move(right0), config, cfg);
    left = job.get();
  } else {
    left = run_lane(std::move(left0), config, cfg);
    right = run_lane(std::move(right0), config, cfg);
  }
  if (left.snapshots.size() != right.snapshots.size()) {
    throw Error(ErrorKind::kTimeMismatch, "half-lines produced different snapshot counts");
  }

  sim.left = std::move(left.final);
  sim.right = std::move(right.final);
  sim.left_snapshots = std::move(left.snapshots);
  sim.right_snapshots = std::move(right.snapshots);
  for (std::size_t i = 0; i < sim.right_snapshots.size(); ++i) {
    sim.measures.push_back(measure::assemble(sim.left_snapshots[i], sim.right_snapshots[i], cfg));
    sim.inverses.push_back(measure::pseudo_inverse(sim.measures.back(), config.z_count));
  }
  return sim;
}

std::optional<double> trace_crossing(const Simulation& sim, double threshold) {
  const auto l = conslaw::first_trace_crossing(sim.left, threshold);
  const auto r = conslaw::first_trace_crossing(sim.right, threshold);
  if (l && r) return std::min(*l, *r);
  return l ? l : r;
}

std::optional<double> t_star_trace(const Simulation& sim) {
  return trace_crossing(sim, 0.5 * sim.initial_sup);
}

}  // namespace condensate::cli
