#include "condensate/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "condensate/datum.hpp"
#include "condensate/errors.hpp"

namespace condensate::measure {
namespace {

void update_support(MeasureState& ms) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const AcCell& c : ms.cells) {
    if (c.mass > 0.0) {
      lo = std::min(lo, c.x_lo);
      hi = std::max(hi, c.x_hi);
    }
  }
  if (ms.dirac_mass > 0.0) {
    lo = std::min(lo, 0.0);
    hi = std::max(hi, 0.0);
  }
  if (lo > hi) lo = hi = 0.0;
  ms.support_lo = lo;
  ms.support_hi = hi;
}

// Mass to the left of the origin (cells are sorted, left cells first).
double left_mass(const MeasureState& ms) {
  double acc = 0.0;
  for (const AcCell& c : ms.cells) {
    if (c.x_hi <= 0.0) acc += c.mass;
  }
  return acc;
}

// Walks atoms in x order: left cells, the Dirac weight, right cells.
template <typename Visit>
void for_each_atom(const MeasureState& ms, Visit&& visit) {
  bool dirac_done = false;
  for (const AcCell& c : ms.cells) {
    if (!dirac_done && c.x_lo >= 0.0) {
      visit(0.0, 0.0, ms.dirac_mass);
      dirac_done = true;
    }
    visit(c.x_lo, c.x_hi, c.mass);
  }
  if (!dirac_done) visit(0.0, 0.0, ms.dirac_mass);
}

double abs_power_integral(double a, double b, double p) {
  // int_a^b |x|^p dx for a <= b on one side of the origin.
  const double lo = std::min(std::abs(a), std::abs(b));
  const double hi = std::max(std::abs(a), std::abs(b));
  return (std::pow(hi, p + 1.0) - std::pow(lo, p + 1.0)) / (p + 1.0);
}

}  // namespace

double MeasureState::ac_mass() const {
  double acc = 0.0;
  for (const AcCell& c : cells) acc += c.mass;
  return acc;
}

double PseudoInverse::dz() const {
  return z_grid.size() > 1 ? z_grid[1] - z_grid[0] : 0.0;
}

std::vector<double> xi_grid_edges(const conslaw::HalfLineGrid& grid, const GammaConfig& cfg) {
  const std::size_t n = grid.cell_count;
  std::vector<double> edges(2 * n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = x_of_xi(grid.edge(i), cfg);
    edges[n + i] = x;
    edges[n - i] = -x;
  }
  return edges;
}

MeasureState assemble(const conslaw::HalfLineState& left, const conslaw::HalfLineState& right,
                      const GammaConfig& cfg) {
  cfg.require_one_dimensional();
  const double t = right.time;
  if (std::abs(left.time - right.time) > 1e-12 * std::max(1.0, std::abs(t))) {
    throw Error(ErrorKind::kTimeMismatch, "half-line states at different times: " +
                                              std::to_string(left.time) + " vs " +
                                              std::to_string(right.time));
  }
  if (left.cells.size() != right.cells.size() ||
      left.grid.cell_width != right.grid.cell_width) {
    throw Error(ErrorKind::kInvalidArgument, "half-line states live on different grids");
  }

  MeasureState ms;
  ms.time = t;
  ms.dirac_mass = left.outflux_ledger + right.outflux_ledger;
  ms.total_mass = left.initial_mass + right.initial_mass;

  const auto& grid = right.grid;
  const std::size_t n = grid.cell_count;
  ms.cells.resize(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x_in = x_of_xi(grid.edge(i), cfg);
    const double x_out = x_of_xi(grid.edge(i + 1), cfg);
    const double x_mid = x_of_xi(grid.center(i), cfg);
    const double dxi = grid.cell_width;

    ms.cells[n + i] = {.x_lo = x_in,
                       .x_hi = x_out,
                       .x_center = x_mid,
                       .density = u_to_rho(right.cells[i], x_mid, cfg),
                       .mass = dxi * right.cells[i]};
    ms.cells[n - 1 - i] = {.x_lo = -x_out,
                           .x_hi = -x_in,
                           .x_center = -x_mid,
                           .density = u_to_rho(left.cells[i], -x_mid, cfg),
                           .mass = dxi * left.cells[i]};
  }
  update_support(ms);
  return ms;
}

MeasureState from_density(const std::function<double(double)>& rho,
                          std::span<const double> x_edges, double dirac_mass, double time) {
  if (x_edges.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "need at least two x-edges");
  }
  MeasureState ms;
  ms.time = time;
  ms.dirac_mass = dirac_mass;
  ms.cells.reserve(x_edges.size() - 1);
  for (std::size_t i = 0; i + 1 < x_edges.size(); ++i) {
    const double a = x_edges[i];
    const double b = x_edges[i + 1];
    if (!(a < b)) {
      throw Error(ErrorKind::kInvalidArgument, "x-edges must be strictly increasing");
    }
    const double mid = 0.5 * (a + b);
    double mass = 0.0;
    if (a == 0.0 || b == 0.0) {
      // rho may blow up like |x|^{-gamma/(1+gamma)}: panels halve toward 0,
      // and the remainder is summed as the geometric series a power law gives.
      const double far = a == 0.0 ? b : a;
      double prev = 0.0, last = 0.0;
      for (int k = 0; k < 60; ++k) {
        const double p = far * std::ldexp(1.0, -k - 1);
        const double q = far * std::ldexp(1.0, -k);
        prev = last;
        last = std::abs(gauss_legendre8(rho, std::min(p, q), std::max(p, q)));
        mass += last;
      }
      const double ratio = prev > 0.0 ? last / prev : 0.0;
      if (ratio > 0.0 && ratio < 1.0) mass += last * ratio / (1.0 - ratio);
    } else {
      mass = gauss_legendre8(rho, a, mid) + gauss_legendre8(rho, mid, b);
    }
    const double density = mid != 0.0 ? rho(mid) : mass / (b - a);
    ms.cells.push_back({.x_lo = a, .x_hi = b, .x_center = mid, .density = density, .mass = mass});
  }
  ms.total_mass = dirac_mass + ms.ac_mass();
  update_support(ms);
  return ms;
}

double pseudo_inverse_at(const MeasureState& ms, double z) {
  double cum = 0.0;
  double result = std::numeric_limits<double>::quiet_NaN();
  double last_right = 0.0;
  bool have_last = false;
  for_each_atom(ms, [&](double x_lo, double x_hi, double mass) {
    if (!std::isnan(result) || !(mass > 0.0)) return;
    if (cum + mass > z) {
      const double w = std::clamp((z - cum) / mass, 0.0, 1.0);
      result = x_lo + w * (x_hi - x_lo);
    }
    cum += mass;
    last_right = x_hi;
    have_last = true;
  });
  if (std::isnan(result)) result = have_last ? last_right : 0.0;
  return result;
}

PseudoInverse pseudo_inverse(const MeasureState& ms, std::size_t z_count) {
  if (z_count < 16) {
    throw Error(ErrorKind::kInvalidArgument,
                "pseudo-inverse needs at least 16 z nodes, got " + std::to_string(z_count));
  }
  PseudoInverse ps;
  ps.time = ms.time;
  const double total = ms.dirac_mass + ms.ac_mass();
  ps.total_mass = total;
  ps.plateau_lo = left_mass(ms);
  ps.plateau_hi = ps.plateau_lo + ms.dirac_mass;
  ps.z_grid.resize(z_count);
  ps.x_values.resize(z_count);
  for (std::size_t k = 0; k < z_count; ++k) {
    ps.z_grid[k] = total * static_cast<double>(k) / static_cast<double>(z_count - 1);
  }

  // Single merged sweep: z nodes are sorted, atoms are sorted.
  std::size_t k = 0;
  double cum = 0.0;
  double last_right = 0.0;
  for_each_atom(ms, [&](double x_lo, double x_hi, double mass) {
    if (!(mass > 0.0)) return;
    while (k < z_count && ps.z_grid[k] < cum + mass) {
      const double w = std::clamp((ps.z_grid[k] - cum) / mass, 0.0, 1.0);
      ps.x_values[k] = x_lo + w * (x_hi - x_lo);
      ++k;
    }
    cum += mass;
    last_right = x_hi;
  });
  for (; k < z_count; ++k) ps.x_values[k] = last_right;
  return ps;
}

double wasserstein_to_dirac(const MeasureState& ms, double p) {
  if (std::isinf(p)) {
    double r = 0.0;
    for (const AcCell& c : ms.cells) {
      if (c.mass > 0.0) r = std::max({r, std::abs(c.x_lo), std::abs(c.x_hi)});
    }
    return r;
  }
  if (!(p >= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "Wasserstein order must be >= 1");
  }
  double acc = 0.0;
  for (const AcCell& c : ms.cells) {
    if (!(c.mass > 0.0)) continue;
    acc += c.mass / (c.x_hi - c.x_lo) * abs_power_integral(c.x_lo, c.x_hi, p);
  }
  return std::pow(acc, 1.0 / p);
}

double density_bound_constant(double u_sup, const GammaConfig& cfg) {
  return std::pow(1.0 + cfg.gamma, -1.0 / (1.0 + cfg.gamma)) * u_sup;
}

MeasureState to_original_frame(const MeasureState& ms, const GammaConfig& cfg) {
  const double tau = time_driftfree_to_original(ms.time, cfg);
  const double shrink = std::exp(-tau);
  MeasureState out = ms;
  out.time = tau;
  for (AcCell& c : out.cells) {
    c.x_lo *= shrink;
    c.x_hi *= shrink;
    c.x_center *= shrink;
    c.density /= shrink;
  }
  out.support_lo *= shrink;
  out.support_hi *= shrink;
  return out;
}

std::vector<OriginalFrameSample> original_frame_series(std::span<const MeasureState> series,
                                                       const GammaConfig& cfg) {
  cfg.require_one_dimensional();
  std::vector<OriginalFrameSample> out;
  out.reserve(series.size());
  for (const MeasureState& ms : series) {
    const MeasureState f = to_original_frame(ms, cfg);
    out.push_back({.t = ms.time,
                   .tau = f.time,
                   .dirac_mass = f.dirac_mass,
                   .ac_mass = f.ac_mass(),
                   .support_lo = f.support_lo,
                   .support_hi = f.support_hi,
                   .diameter = f.support_hi - f.support_lo,
                   .w1_to_dirac = wasserstein_to_dirac(f, 1.0)});
  }
  return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "slope fit needs two or more paired samples");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace condensate::measure
