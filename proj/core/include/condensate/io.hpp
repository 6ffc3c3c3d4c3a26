#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <span>
#include <string>

#include "condensate/conslaw.hpp"
#include "condensate/measure.hpp"

namespace condensate::io {

// Plain CSV writers. Numbers are printed with %.17g so reruns are
// byte-identical and values round-trip exactly.
//
//   snapshot         t,xi_center,u                       (signed xi, both halves)
//   ledger           t,trace_u0,outflux_cumulative       (one file per half-line)
//   measure          t,dirac_mass,ac_mass,support_lo,support_hi,w1_to_dirac
//   pseudo-inverse   t,z,X

void write_snapshot_header(std::ostream& os);
/// Rows of both half-lines at a common time, sorted by signed xi.
void write_snapshot_rows(std::ostream& os, const conslaw::HalfLineState& left,
                         const conslaw::HalfLineState& right);

void write_ledger(std::ostream& os, std::span<const conslaw::TracePoint> trace);

void write_measure_header(std::ostream& os);
void write_measure_row(std::ostream& os, const measure::MeasureState& ms);
/// Same columns for the original frame; t holds tau.
void write_measure_row(std::ostream& os, const measure::OriginalFrameSample& s);

void write_pseudo_inverse_header(std::ostream& os);
void write_pseudo_inverse_rows(std::ostream& os, const measure::PseudoInverse& ps);

/// Formats a double with %.17g.
std::string format_number(double v);

/// Opens a file for writing, creating parent directories. Throws Error(kIo).
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace condensate::io
