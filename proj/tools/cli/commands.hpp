#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace condensate::cli {

// Output files written by `simulate` (all under output_dir):
//
//   config.resolved.json   the config actually used
//   snapshots.csv          t,xi_center,u
//   ledger_left.csv        t,trace_u0,outflux_cumulative
//   ledger_right.csv       t,trace_u0,outflux_cumulative
//   measure.csv            t,dirac_mass,ac_mass,support_lo,support_hi,w1_to_dirac
//   pseudo_inverse.csv     t,z,X
//   summary.json
//   measure_original.csv   same columns in the (v, tau) frame; frame = original

void cmd_simulate(const RunConfig& config, std::ostream& log);

enum class RowStatus { kPass, kFail, kInfo, kSkip };

struct VerifyRow {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  RowStatus status = RowStatus::kInfo;
  std::string note;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  bool passed() const;
};

/// Oracle comparisons for the example36 datum (trace onset, mass law,
/// convergence, pseudo-inverse) plus the invariant and diagnostic rows for
/// any datum. The example36 run goes to 4/gamma with snapshots every
/// 0.25/gamma regardless of t_end and cadence.
VerifyReport cmd_verify(const RunConfig& config);
void print_report(const VerifyReport& report, std::ostream& out);

/// Characteristic picture up to t_end: characteristics.csv (t,x0,x,rho) and
/// characteristics_report.json. Throws Error(kNotSmoothRegime) when t_end is
/// not below the smooth validity time.
void cmd_characteristics(const RunConfig& config, std::ostream& log);

/// Rewrites measure.csv and pseudo_inverse.csv of a finished drift-free run
/// in the original frame (measure_original.csv, pseudo_inverse_original.csv).
void cmd_convert(const std::filesystem::path& run_dir, std::ostream& log);

/// Full command line. Returns the process exit code: 0 success, 2 config
/// error, 3 numerical-validity error, 4 I/O error. Errors are reported on err
/// as one JSON object.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace condensate::cli
