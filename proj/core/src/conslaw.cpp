#include "condensate/conslaw.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "condensate/errors.hpp"

namespace condensate::conslaw {
namespace {

// Clipped roundoff must stay below this magnitude.
constexpr double kClipLimit = 1e-13;

// A xi-cell holds exactly the datum mass on its x-image, so cell averages
// come from InitialDatum::integrate rather than quadrature of u in xi (u_I
// has a |xi|^{1/gamma - 1} derivative singularity at the origin).
HalfLineState make_side(const InitialDatum& datum, const HalfLineGrid& grid,
                        const GammaConfig& cfg, Orientation orientation) {
  HalfLineState s;
  s.grid = grid;
  s.orientation = orientation;
  s.cells.assign(grid.cell_count, 0.0);
  for (std::size_t i = 0; i < grid.cell_count; ++i) {
    const double x_in = x_of_xi(grid.edge(i), cfg);
    const double x_out = x_of_xi(grid.edge(i + 1), cfg);
    const double mass = orientation == Orientation::kRight ? datum.integrate(x_in, x_out)
                                                           : datum.integrate(-x_out, -x_in);
    s.cells[i] = mass / grid.cell_width;
  }
  s.initial_mass = s.mass();
  s.trace_history.push_back({0.0, s.cells.front(), 0.0});
  return s;
}

HalfLineState interpolate(const std::vector<double>& before, double t_before,
                          double ledger_before, const HalfLineState& after, double t) {
  HalfLineState snap;
  snap.grid = after.grid;
  snap.orientation = after.orientation;
  snap.initial_mass = after.initial_mass;
  snap.steps = after.steps;
  const double span = after.time - t_before;
  const double w = span > 0.0 ? (t - t_before) / span : 1.0;
  snap.cells.resize(before.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    snap.cells[i] = (1.0 - w) * before[i] + w * after.cells[i];
  }
  snap.outflux_ledger = (1.0 - w) * ledger_before + w * after.outflux_ledger;
  snap.time = t;
  return snap;
}

HalfLineState strip_history(const HalfLineState& s) {
  HalfLineState snap;
  snap.grid = s.grid;
  snap.orientation = s.orientation;
  snap.cells = s.cells;
  snap.time = s.time;
  snap.outflux_ledger = s.outflux_ledger;
  snap.initial_mass = s.initial_mass;
  snap.steps = s.steps;
  return snap;
}

}  // namespace

HalfLineGrid HalfLineGrid::uniform(std::size_t cell_count, double extent) {
  if (cell_count < 8) {
    throw Error(ErrorKind::kInvalidArgument,
                "half-line grid needs at least 8 cells, got " + std::to_string(cell_count));
  }
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw Error(ErrorKind::kInvalidArgument, "half-line grid extent must be positive");
  }
  return {cell_count, extent / static_cast<double>(cell_count)};
}

HalfLineGrid HalfLineGrid::covering(const InitialDatum& datum, std::size_t cell_count,
                                    const GammaConfig& cfg, double margin) {
  const double reach = std::max(std::abs(xi_of_x(datum.support_lo(), cfg)),
                                std::abs(xi_of_x(datum.support_hi(), cfg)));
  return uniform(cell_count, margin * reach);
}

double HalfLineState::mass() const {
  return grid.cell_width * std::accumulate(cells.begin(), cells.end(), 0.0);
}

double HalfLineState::signed_center(std::size_t i) const {
  const double c = grid.center(i);
  return orientation == Orientation::kRight ? c : -c;
}

std::pair<HalfLineState, HalfLineState> init_from_datum(const InitialDatum& datum,
                                                         const HalfLineGrid& grid,
                                                         const GammaConfig& cfg) {
  cfg.require_one_dimensional();
  const double reach = std::max(std::abs(xi_of_x(datum.support_lo(), cfg)),
                                std::abs(xi_of_x(datum.support_hi(), cfg)));
  if (reach >= grid.extent()) {
    throw Error(ErrorKind::kSupportOverflow,
                "xi-image of the datum support (" + std::to_string(reach) +
                    ") does not fit in the grid extent " + std::to_string(grid.extent()));
  }
  return {make_side(datum, grid, cfg, Orientation::kLeft),
          make_side(datum, grid, cfg, Orientation::kRight)};
}

double godunov_flux(double u_upwind, const GammaConfig& cfg) {
  if (u_upwind <= 0.0) return 0.0;
  return std::pow(u_upwind, 1.0 + cfg.gamma) / (1.0 + cfg.gamma);
}

double interface_flux(double /*u_left*/, double u_right, const GammaConfig& cfg) {
  return godunov_flux(u_right, cfg);
}

double riemann_exact(double u_l, double u_r, double xi_over_t, const GammaConfig& cfg) {
  const double g = cfg.gamma;
  if (u_l == u_r) return u_l;
  if (u_l < u_r) {
    // Compressive jump: admissible shock with Rankine-Hugoniot speed.
    const double s = -(std::pow(u_l, 1.0 + g) - std::pow(u_r, 1.0 + g)) /
                     ((1.0 + g) * (u_l - u_r));
    return xi_over_t < s ? u_l : u_r;
  }
  // Expansive jump: fan between speeds -u_l^g and -u_r^g.
  const double s_l = -std::pow(u_l, g);
  const double s_r = -std::pow(u_r, g);
  if (xi_over_t <= s_l) return u_l;
  if (xi_over_t >= s_r) return u_r;
  return std::pow(-xi_over_t, 1.0 / g);
}

double stable_dt(const HalfLineState& state, double cfl, const GammaConfig& cfg) {
  if (!(cfl > 0.0 && cfl <= 1.0)) {
    throw Error(ErrorKind::kCflViolation,
                "CFL number must lie in (0, 1], got " + std::to_string(cfl));
  }
  const double umax =
      state.cells.empty() ? 0.0 : *std::max_element(state.cells.begin(), state.cells.end());
  const double speed = std::max(umax > 0.0 ? std::pow(umax, cfg.gamma) : 0.0, kSpeedFloor);
  return cfl * state.grid.cell_width / speed;
}

HalfLineState step(HalfLineState state, double cfl, const GammaConfig& cfg, double max_dt) {
  const double dt = std::min(stable_dt(state, cfl, cfg), max_dt);
  if (!(dt >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "step size must be >= 0");
  const double lambda = dt / state.grid.cell_width;

  auto& u = state.cells;
  const std::size_t n = u.size();
  for (double& v : u) {
    if (v < 0.0) {
      if (v < -kClipLimit) {
        throw Error(ErrorKind::kInvalidArgument,
                    "negative cell value " + std::to_string(v) + " beyond roundoff");
      }
      v = 0.0;
    }
  }

  // F_{i+1/2} takes the right cell; F_{N+1/2} = 0 (inflow of vacuum).
  double f_here = godunov_flux(u[0], cfg);
  const double outflow = f_here;
  for (std::size_t i = 0; i < n; ++i) {
    const double f_next = i + 1 < n ? godunov_flux(u[i + 1], cfg) : 0.0;
    u[i] += lambda * (f_next - f_here);
    f_here = f_next;
  }

  state.outflux_ledger += dt * outflow;
  state.time += dt;
  ++state.steps;
  state.trace_history.push_back({state.time, u[0], state.outflux_ledger});
  return state;
}

HalfLineState run_until(HalfLineState state, double t_end, double cfl, const GammaConfig& cfg,
                        double cadence, const Observer& observer) {
  if (t_end < state.time) {
    throw Error(ErrorKind::kInvalidArgument, "t_end precedes the current state time");
  }
  const bool snapshots = cadence > 0.0 && static_cast<bool>(observer);
  if (snapshots) observer(strip_history(state));

  // Next interior snapshot index k with k * cadence > start.
  double k = snapshots ? std::floor(state.time / cadence) + 1.0 : 0.0;
  std::vector<double> before;
  bool stepped = false;
  while (state.time < t_end) {
    stepped = true;
    const double remaining = t_end - state.time;
    const double t_before = state.time;
    const double ledger_before = state.outflux_ledger;
    const double dt = std::min(stable_dt(state, cfl, cfg), remaining);
    const bool lands = dt >= remaining;
    const bool need_copy = snapshots && k * cadence <= t_before + dt && k * cadence < t_end;
    if (need_copy) before = state.cells;

    state = step(std::move(state), cfl, cfg, remaining);
    if (lands) {
      state.time = t_end;
      state.trace_history.back().t = t_end;
    }

    if (need_copy) {
      while (k * cadence <= state.time && k * cadence < t_end) {
        observer(interpolate(before, t_before, ledger_before, state, k * cadence));
        k += 1.0;
      }
    }
  }
  if (snapshots && stepped) observer(strip_history(state));
  return state;
}

double total_variation(const HalfLineState& state) {
  double tv = 0.0;
  double prev = 0.0;
  for (double v : state.cells) {
    tv += std::abs(v - prev);
    prev = v;
  }
  return tv + prev;
}

std::optional<double> first_trace_crossing(const HalfLineState& state, double threshold) {
  for (const TracePoint& p : state.trace_history) {
    if (p.trace_u0 > threshold) return p.t;
  }
  return std::nullopt;
}

}  // namespace condensate::conslaw
