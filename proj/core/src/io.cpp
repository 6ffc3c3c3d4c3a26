#include "condensate/io.hpp"

#include <cstdio>
#include <ostream>
#include <string>

#include "condensate/errors.hpp"

namespace condensate::io {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << format_number(v);
    first = false;
  }
  os << '\n';
}

}  // namespace

void write_snapshot_header(std::ostream& os) { os << "t,xi_center,u\n"; }

void write_snapshot_rows(std::ostream& os, const conslaw::HalfLineState& left,
                         const conslaw::HalfLineState& right) {
  for (std::size_t i = left.cells.size(); i-- > 0;) {
    row(os, {left.time, left.signed_center(i), left.cells[i]});
  }
  for (std::size_t i = 0; i < right.cells.size(); ++i) {
    row(os, {right.time, right.signed_center(i), right.cells[i]});
  }
}

void write_ledger(std::ostream& os, std::span<const conslaw::TracePoint> trace) {
  os << "t,trace_u0,outflux_cumulative\n";
  for (const conslaw::TracePoint& p : trace) row(os, {p.t, p.trace_u0, p.outflux_cumulative});
}

void write_measure_header(std::ostream& os) {
  os << "t,dirac_mass,ac_mass,support_lo,support_hi,w1_to_dirac\n";
}

void write_measure_row(std::ostream& os, const measure::MeasureState& ms) {
  row(os, {ms.time, ms.dirac_mass, ms.ac_mass(), ms.support_lo, ms.support_hi,
           measure::wasserstein_to_dirac(ms, 1.0)});
}

void write_measure_row(std::ostream& os, const measure::OriginalFrameSample& s) {
  row(os, {s.tau, s.dirac_mass, s.ac_mass, s.support_lo, s.support_hi, s.w1_to_dirac});
}

void write_pseudo_inverse_header(std::ostream& os) { os << "t,z,X\n"; }

void write_pseudo_inverse_rows(std::ostream& os, const measure::PseudoInverse& ps) {
  for (std::size_t k = 0; k < ps.z_grid.size(); ++k) {
    row(os, {ps.time, ps.z_grid[k], ps.x_values[k]});
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace condensate::io
