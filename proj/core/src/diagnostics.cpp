#include "condensate/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "condensate/errors.hpp"

namespace condensate::measure {
namespace {

std::string describe(double a, double b) {
  std::ostringstream os;
  os.precision(6);
  os << a << " vs " << b;
  return os.str();
}

// An empty plateau still marks where X crosses zero.
bool near_plateau(const PseudoInverse& ps, double z, double band) {
  return z >= ps.plateau_lo - band && z <= ps.plateau_hi + band;
}

std::vector<double> slopes_of(const std::vector<double>& x, double dz) {
  std::vector<double> s(x.size() > 1 ? x.size() - 1 : 0);
  for (std::size_t k = 0; k + 1 < x.size(); ++k) s[k] = (x[k + 1] - x[k]) / dz;
  return s;
}

double ratio(double a, double b) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

// Candidate jumps on an arbitrary (z, X) sampling; interval j is the
// transition, two smooth slopes on each side.
std::vector<SlopeJump> raw_jumps(const std::vector<double>& z, const std::vector<double>& x,
                                 const PseudoInverse& ps, const DiagnosticOptions& opt) {
  std::vector<SlopeJump> out;
  if (z.size() < 8) return out;
  const double dz = z[1] - z[0];
  const std::vector<double> s = slopes_of(x, dz);
  const double band = static_cast<double>(opt.edge_band + 2) * dz;
  for (std::size_t j = 2; j + 2 < s.size(); ++j) {
    const double zc = 0.5 * (z[j] + z[j + 1]);
    if (zc < band || zc > ps.total_mass - band) continue;
    if (near_plateau(ps, zc, band)) continue;
    const double l1 = s[j - 2], l2 = s[j - 1], r1 = s[j + 1], r2 = s[j + 2];
    if (!(l1 > 0.0 && l2 > 0.0 && r1 > 0.0 && r2 > 0.0)) continue;
    if (ratio(l1, l2) > opt.smooth_ratio || ratio(r1, r2) > opt.smooth_ratio) continue;
    const double left = 0.5 * (l1 + l2);
    const double right = 0.5 * (r1 + r2);
    if (ratio(left, right) <= opt.jump_ratio) continue;
    out.push_back({.node = j, .z = zc, .x = 0.5 * (x[j] + x[j + 1]),
                   .slope_left = left, .slope_right = right});
  }
  // Keep one representative per cluster of adjacent intervals.
  std::vector<SlopeJump> merged;
  for (const SlopeJump& c : out) {
    if (!merged.empty() && c.node <= merged.back().node + 2) continue;
    merged.push_back(c);
  }
  return merged;
}

}  // namespace

std::size_t DiagnosticReport::count(const std::string& property) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(),
      [&](const Violation& v) { return v.property == property; }));
}

std::vector<SlopeJump> detect_slope_jumps(const PseudoInverse& ps, const DiagnosticOptions& opt) {
  std::vector<SlopeJump> fine = raw_jumps(ps.z_grid, ps.x_values, ps, opt);
  if (fine.empty()) return fine;

  std::vector<double> zc, xc;
  for (std::size_t k = 0; k < ps.z_grid.size(); k += 2) {
    zc.push_back(ps.z_grid[k]);
    xc.push_back(ps.x_values[k]);
  }
  const std::vector<SlopeJump> coarse = raw_jumps(zc, xc, ps, opt);
  const double reach = 4.0 * ps.dz();
  std::vector<SlopeJump> stable;
  for (const SlopeJump& f : fine) {
    const bool seen = std::any_of(coarse.begin(), coarse.end(), [&](const SlopeJump& c) {
      return std::abs(c.z - f.z) <= reach;
    });
    if (seen) stable.push_back(f);
  }
  return stable;
}

double eq_residual(const PseudoInverse& before, const PseudoInverse& now, const GammaConfig& cfg,
                   std::size_t edge_band) {
  const std::size_t n = now.z_grid.size();
  if (before.z_grid.size() != n) {
    throw Error(ErrorKind::kInvalidArgument, "pseudo-inverse grids differ in size");
  }
  const double dt = now.time - before.time;
  if (!(dt > 0.0)) throw Error(ErrorKind::kInvalidArgument, "snapshot times must increase");
  const double dz = now.dz();
  const double band = static_cast<double>(edge_band) * dz;

  double scale = 0.0;
  for (double x : now.x_values) scale = std::max(scale, std::abs(x));
  if (!(scale > 0.0) || !(now.total_mass > 0.0)) return 0.0;

  double acc = 0.0;
  const std::size_t first = std::max<std::size_t>(edge_band, 1);
  for (std::size_t k = first; k + first < n; ++k) {
    const double z = now.z_grid[k];
    if (near_plateau(now, z, band) || near_plateau(before, z, band)) continue;
    const double xz = (now.x_values[k + 1] - now.x_values[k - 1]) / (2.0 * dz);
    const double xt = (now.x_values[k] - before.x_values[k]) / dt;
    const double r = xt * std::pow(std::abs(xz), cfg.gamma) + now.x_values[k];
    acc += std::abs(r) * dz;
  }
  return acc / (now.total_mass * scale);
}

DiagnosticReport check_entropy_measure(std::span<const MeasureState> ms_series,
                                       std::span<const PseudoInverse> ps_series,
                                       const GammaConfig& cfg, const DiagnosticOptions& opt) {
  cfg.require_one_dimensional();
  if (ms_series.empty() || ms_series.size() != ps_series.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "diagnostics need matching, non-empty measure and pseudo-inverse series");
  }
  for (std::size_t i = 1; i < ms_series.size(); ++i) {
    if (!(ms_series[i].time > ms_series[i - 1].time)) {
      throw Error(ErrorKind::kInvalidArgument, "snapshot times must be strictly increasing");
    }
  }

  DiagnosticReport report;
  report.snapshots = ms_series.size();
  auto flag = [&](const char* prop, double t, double z, std::string detail) {
    report.violations.push_back({prop, t, z, std::move(detail)});
  };

  // (In)
  const MeasureState& first = ms_series.front();
  if (opt.datum && first.time == 0.0) {
    report.in_checked = true;
    double err = first.dirac_mass;
    for (const AcCell& c : first.cells) {
      err += std::abs(c.mass - opt.datum->integrate(c.x_lo, c.x_hi));
    }
    report.in_error = err;
    if (err > opt.in_tolerance) {
      flag("In", 0.0, 0.0, "L1 cell-mass mismatch " + describe(err, opt.in_tolerance));
    }
  }

  for (std::size_t i = 0; i < ps_series.size(); ++i) {
    const PseudoInverse& ps = ps_series[i];
    const MeasureState& ms = ms_series[i];
    const double t = ps.time;
    const std::size_t n = ps.x_values.size();
    const double dz = ps.dz();
    const std::vector<double> s = slopes_of(ps.x_values, dz);
    const double diam = std::max(ms.support_hi - ms.support_lo, 1e-300);
    const double band = static_cast<double>(opt.edge_band) * dz;

    // (X1), (X2)
    double gap_fine = 0.0;
    double gap_coarse = 0.0;
    std::size_t gap_at = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const double gap = ps.x_values[k + 1] - ps.x_values[k];
      if (gap < -1e-14 * diam) {
        flag("X2", t, ps.z_grid[k], "X decreases by " + describe(-gap, 0.0));
      }
      if (gap > gap_fine) {
        gap_fine = gap;
        gap_at = k;
      }
      if (k + 2 < n) gap_coarse = std::max(gap_coarse, ps.x_values[k + 2] - ps.x_values[k]);
    }
    if (gap_fine > opt.continuity_tolerance * diam && gap_fine > opt.continuity_ratio * gap_coarse) {
      flag("X1", t, ps.z_grid[gap_at], "gap does not shrink under refinement " +
                                           describe(gap_fine, gap_coarse));
    }

    // (X3) away from the plateau and the support edges
    for (std::size_t k = opt.edge_band; k + opt.edge_band < s.size(); ++k) {
      const double zc = 0.5 * (ps.z_grid[k] + ps.z_grid[k + 1]);
      if (near_plateau(ps, zc, band + dz)) continue;
      if (!(s[k] > 0.0) || !std::isfinite(s[k])) {
        flag("X3", t, zc, "one-sided slope " + describe(s[k], 0.0));
      }
    }

    // (X4), (X5) for t > 0
    if (t > 0.0 && s.size() >= 2) {
      if (ps.x_values.front() < 0.0 && s[0] < s[1]) {
        flag("X4", t, 0.0, "edge slope does not grow " + describe(s[0], s[1]));
      }
      const std::size_t m = s.size() - 1;
      if (ps.x_values.back() > 0.0 && s[m] < s[m - 1]) {
        flag("X5", t, ps.total_mass, "edge slope does not grow " + describe(s[m], s[m - 1]));
      }
    }

    // Plateau width
    const auto zeros = static_cast<double>(
        std::count(ps.x_values.begin(), ps.x_values.end(), 0.0));
    const double width = zeros * dz;
    if (std::abs(width - ms.dirac_mass) > dz * (1.0 + 1e-9) + 1e-14) {
      flag("Pl", t, ps.plateau_lo, "plateau width " + describe(width, ms.dirac_mass));
    }

    // (Ol)
    for (const SlopeJump& j : detect_slope_jumps(ps, opt)) {
      const bool increasing = j.slope_right > j.slope_left;
      if (j.x < 0.0 && !increasing) {
        flag("Ol", t, j.z, "decreasing slope jump at X < 0: " + describe(j.slope_left, j.slope_right));
      } else if (j.x > 0.0 && increasing) {
        flag("Ol", t, j.z, "increasing slope jump at X > 0: " + describe(j.slope_left, j.slope_right));
      }
    }

    // (Eq)
    if (i > 0 && t > 0.0) {
      const double r = eq_residual(ps_series[i - 1], ps, cfg, opt.edge_band);
      const double allowed = opt.eq_rate * cfg.gamma * (t - ps_series[i - 1].time) + opt.eq_floor;
      report.eq_residuals.push_back(r);
      if (r > allowed) flag("Eq", t, 0.0, "relative residual " + describe(r, allowed));
    }
  }
  return report;
}

}  // namespace condensate::measure
