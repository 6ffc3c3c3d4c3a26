#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "condensate/characteristics.hpp"
#include "condensate/diagnostics.hpp"
#include "condensate/errors.hpp"
#include "condensate/io.hpp"
#include "condensate/oracle.hpp"
#include "simulation.hpp"

namespace condensate::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Properties reported by the diagnostics, in table order.
constexpr const char* kProperties[] = {"In", "X1", "X2", "X3", "X4", "X5", "Pl", "Ol", "Eq"};

measure::DiagnosticOptions diagnostic_options(const InitialDatum& datum) {
  measure::DiagnosticOptions opt;
  opt.datum = datum;
  return opt;
}

void require_line(const RunConfig& config, const char* command) {
  if (config.dim != 1) {
    throw Error(ErrorKind::kConfig, std::string(command) + " supports dim = 1 only");
  }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void write_or_throw(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path.string());
}

// Cell-average L1 error in xi against the closed form, both half-lines.
double l1_error(const conslaw::HalfLineState& left, const conslaw::HalfLineState& right,
                const oracle::ExplicitSolutionSpec& spec) {
  const auto& grid = right.grid;
  double err = 0.0;
  for (std::size_t i = 0; i < grid.cell_count; ++i) {
    const double exact = gauss_legendre8(
        [&](double xi) { return oracle::u_explicit(xi, right.time, spec); }, grid.edge(i),
        grid.edge(i + 1));
    err += std::abs(right.cells[i] * grid.cell_width - exact) + left.cells[i] * grid.cell_width;
  }
  return err;
}

std::optional<std::size_t> snapshot_at(const Simulation& sim, double t) {
  for (std::size_t i = 0; i < sim.measures.size(); ++i) {
    if (std::abs(sim.measures[i].time - t) <= 1e-9 * std::max(1.0, t)) return i;
  }
  return std::nullopt;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

std::vector<std::vector<double>> read_csv(const fs::path& path, std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != columns) {
      throw Error(ErrorKind::kIo, "malformed row in " + path.string() + ": " + line);
    }
    std::vector<double> r;
    for (const auto& c : cells) {
      char* end = nullptr;
      r.push_back(std::strtod(c.c_str(), &end));
      if (end == c.c_str()) throw Error(ErrorKind::kIo, "bad number in " + path.string());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string status_name(RowStatus s) {
  switch (s) {
    case RowStatus::kPass: return "PASS";
    case RowStatus::kFail: return "FAIL";
    case RowStatus::kInfo: return "info";
    case RowStatus::kSkip: return "skip";
  }
  return "?";
}

RowStatus judge(bool ok) { return ok ? RowStatus::kPass : RowStatus::kFail; }

}  // namespace

void cmd_simulate(const RunConfig& config, std::ostream& log) {
  config.validate();
  require_line(config, "simulate");
  const InitialDatum datum = config.make_datum();
  const GammaConfig cfg = config.gamma_config();
  const fs::path dir = config.output_dir;

  save_config(config, dir / "config.resolved.json");
  const Simulation sim = simulate_run(config, datum);

  {
    auto out = io::open_output(dir / "snapshots.csv");
    io::write_snapshot_header(out);
    for (std::size_t i = 0; i < sim.right_snapshots.size(); ++i) {
      io::write_snapshot_rows(out, sim.left_snapshots[i], sim.right_snapshots[i]);
    }
    write_or_throw(out, dir / "snapshots.csv");
  }
  for (const auto& [name, state] : {std::pair{"ledger_left.csv", &sim.left},
                                    std::pair{"ledger_right.csv", &sim.right}}) {
    auto out = io::open_output(dir / name);
    io::write_ledger(out, state->trace_history);
    write_or_throw(out, dir / name);
  }
  {
    auto out = io::open_output(dir / "measure.csv");
    io::write_measure_header(out);
    for (const auto& ms : sim.measures) io::write_measure_row(out, ms);
    write_or_throw(out, dir / "measure.csv");
  }
  {
    auto out = io::open_output(dir / "pseudo_inverse.csv");
    io::write_pseudo_inverse_header(out);
    for (const auto& ps : sim.inverses) io::write_pseudo_inverse_rows(out, ps);
    write_or_throw(out, dir / "pseudo_inverse.csv");
  }
  if (config.frame == "original") {
    auto out = io::open_output(dir / "measure_original.csv");
    io::write_measure_header(out);
    for (const auto& s : measure::original_frame_series(sim.measures, cfg)) {
      io::write_measure_row(out, s);
    }
    write_or_throw(out, dir / "measure_original.csv");
  }

  const auto report =
      measure::check_entropy_measure(sim.measures, sim.inverses, cfg, diagnostic_options(datum));
  json violations = json::object();
  for (const char* p : kProperties) violations[p] = report.count(p);

  const auto& last = sim.measures.back();
  json summary = {
      {"version", kConfigVersion},
      {"gamma", config.gamma},
      {"dim", config.dim},
      {"grid", {{"cells", sim.grid.cell_count},
                {"cell_width", sim.grid.cell_width},
                {"extent", sim.grid.extent()}}},
      {"t_end", last.time},
      {"steps", {{"left", sim.left.steps}, {"right", sim.right.steps}}},
      {"snapshots", sim.measures.size()},
      {"t_star_trace", optional_number(t_star_trace(sim))},
      {"trace_first_above_1e-2", optional_number(trace_crossing(sim, 1e-2))},
      {"total_mass", last.total_mass},
      {"final_dirac_mass", last.dirac_mass},
      {"final_m_over_M", last.total_mass > 0.0 ? last.dirac_mass / last.total_mass : 0.0},
      {"violations", violations},
  };
  {
    auto out = io::open_output(dir / "summary.json");
    out << summary.dump(2) << '\n';
    write_or_throw(out, dir / "summary.json");
  }

  log << "simulated to t = " << last.time << " with " << sim.right.steps << " steps; m/M = "
      << summary["final_m_over_M"].get<double>() << "; "
      << (report.ok() ? "no diagnostic violations" : std::to_string(report.violations.size()) +
                                                         " diagnostic violations")
      << "\nwrote " << dir.string() << '\n';
}

bool VerifyReport::passed() const {
  return std::none_of(rows.begin(), rows.end(),
                      [](const VerifyRow& r) { return r.status == RowStatus::kFail; });
}

VerifyReport cmd_verify(const RunConfig& config) {
  config.validate();
  require_line(config, "verify");
  const InitialDatum datum = config.make_datum();
  const GammaConfig cfg = config.gamma_config();
  const double g = config.gamma;
  const bool exact = config.datum.kind == "example36";

  RunConfig run = config;
  if (exact) {
    run.t_end = 4.0 / g;
    run.snapshot_cadence = 0.25 / g;
  }
  const Simulation sim = simulate_run(run, datum);
  const std::size_t n = sim.grid.cell_count;
  VerifyReport rep;
  auto add = [&](std::string name, double measured, double threshold, RowStatus s,
                 std::string note = {}) {
    rep.rows.push_back({std::move(name), measured, threshold, s, std::move(note)});
  };

  if (exact) {
    const oracle::ExplicitSolutionSpec spec{.gamma = g};
    const double t_star = oracle::trace_onset_time(spec);
    // One cell crossed at the fastest characteristic speed of the datum.
    const double dxi_time = sim.grid.cell_width / std::pow(sim.initial_sup, g);

    const auto onset = t_star_trace(sim);
    add("trace onset |t - 1/gamma| / dxi", onset ? std::abs(*onset - t_star) / dxi_time : INFINITY,
        5.0, judge(onset && std::abs(*onset - t_star) <= 5.0 * dxi_time), "half-jump crossing");
    const auto first = trace_crossing(sim, 1e-2);
    add("trace > 1e-2 offset (t - 1/gamma) / dxi",
        first ? (*first - t_star) / dxi_time : INFINITY, 5.0, RowStatus::kInfo,
        "smeared cell average crosses early");

    double mass_err = 0.0;
    for (const auto& ms : sim.measures) {
      if (ms.time < 1.5 / g - 1e-12) continue;
      const double want = oracle::mass_explicit(ms.time, spec) / spec.total_mass();
      mass_err = std::max(mass_err, std::abs(ms.dirac_mass / ms.total_mass - want) / want);
    }
    add("mass law rel. error, t in [1.5, 4]/gamma", mass_err, 0.01,
        n >= 1024 ? judge(mass_err <= 0.01) : RowStatus::kInfo,
        n >= 1024 ? "" : "grid below 1024 cells");

    // Convergence against the closed form at t = 0.5/gamma.
    std::vector<double> sizes, errors;
    for (std::size_t k = n / 8; k <= n; k *= 2) {
      if (k < 8) continue;
      const auto grid = conslaw::HalfLineGrid::covering(datum, k, cfg);
      auto [l, r] = conslaw::init_from_datum(datum, grid, cfg);
      l = conslaw::run_until(std::move(l), 0.5 / g, config.cfl, cfg);
      r = conslaw::run_until(std::move(r), 0.5 / g, config.cfl, cfg);
      sizes.push_back(grid.cell_width);
      errors.push_back(l1_error(l, r, spec));
    }
    if (sizes.size() >= 2) {
      const double order = measure::loglog_slope(sizes, errors);
      add("L1 convergence order at t = 0.5/gamma", order, 0.8,
          n >= 512 ? judge(order >= 0.8) : RowStatus::kInfo,
          n >= 512 ? "" : "grid below 512 cells");
      add("L1 error at t = 0.5/gamma", errors.back(), 0.0, RowStatus::kInfo);
    }

    for (double t : {0.5 / g, 2.0 / g}) {
      const auto idx = snapshot_at(sim, t);
      if (!idx) continue;
      const auto& ps = sim.inverses[*idx];
      double linf = 0.0;
      for (std::size_t k = 0; k < ps.z_grid.size(); ++k) {
        linf = std::max(linf, std::abs(ps.x_values[k] - oracle::X_explicit(ps.z_grid[k], t, spec)));
      }
      std::ostringstream name;
      name << "pseudo-inverse Linf at t = " << t * g << "/gamma";
      add(name.str(), linf, 1e-2, n >= 4096 ? judge(linf <= 1e-2) : RowStatus::kInfo,
          n >= 4096 ? "" : "grid below 4096 cells");
    }
  }

  // Invariants, any datum.
  double ledger = 0.0;
  for (const auto* s : {&sim.left, &sim.right}) {
    const double drift = std::abs(s->mass() + s->outflux_ledger - s->initial_mass);
    const double budget = 1e-12 * std::max(1.0, static_cast<double>(s->steps) / 1e4);
    ledger = std::max(ledger, drift / budget);
  }
  add("mass ledger drift / budget", ledger, 1.0, judge(ledger <= 1.0), "budget 1e-12 per 1e4 steps");

  double drop = 0.0;
  double tv_growth = 0.0;
  for (std::size_t i = 1; i < sim.measures.size(); ++i) {
    drop = std::max(drop, sim.measures[i - 1].dirac_mass - sim.measures[i].dirac_mass);
    for (const auto* snaps : {&sim.left_snapshots, &sim.right_snapshots}) {
      tv_growth = std::max(tv_growth, conslaw::total_variation((*snaps)[i]) -
                                          conslaw::total_variation((*snaps)[i - 1]));
    }
  }
  add("largest decrease of m", drop, 0.0, judge(drop <= 0.0));
  add("largest growth of TV", tv_growth, 1e-12, judge(tv_growth <= 1e-12));

  double bound = 0.0;
  for (const auto& ms : sim.measures) {
    const double c = measure::density_bound_constant(sim.initial_sup, cfg);
    for (const auto& cell : ms.cells) {
      if (cell.mass > 0.0) {
        bound = std::max(bound, cell.density * std::pow(std::abs(cell.x_center), 1.0 / (1.0 + g)) / c);
      }
    }
  }
  add("rho |x|^{1/(1+gamma)} / bound", bound, 1.0 + 1e-12, judge(bound <= 1.0 + 1e-12));

  const auto diag =
      measure::check_entropy_measure(sim.measures, sim.inverses, cfg, diagnostic_options(datum));
  for (const char* p : kProperties) {
    const auto c = static_cast<double>(diag.count(p));
    add(std::string("diagnostic ") + p + " violations", c, 0.0, judge(c == 0.0));
  }
  if (!diag.eq_residuals.empty()) {
    add("max (Eq) residual", *std::max_element(diag.eq_residuals.begin(), diag.eq_residuals.end()),
        0.0, RowStatus::kInfo, "allowed: gamma * snapshot spacing + 0.01");
  }
  return rep;
}

void print_report(const VerifyReport& report, std::ostream& out) {
  std::size_t width = 5;
  for (const auto& r : report.rows) width = std::max(width, r.name.size());
  out << std::left << std::setw(static_cast<int>(width) + 2) << "check" << std::setw(14)
      << "measured" << std::setw(12) << "threshold" << std::setw(8) << "status" << "note\n";
  for (const auto& r : report.rows) {
    char m[32], t[32];
    std::snprintf(m, sizeof m, "%.6g", r.measured);
    std::snprintf(t, sizeof t, "%.6g", r.threshold);
    out << std::left << std::setw(static_cast<int>(width) + 2) << r.name << std::setw(14) << m
        << std::setw(12) << t << std::setw(8) << status_name(r.status) << r.note << '\n';
  }
  out << (report.passed() ? "verify: all checks passed\n" : "verify: FAILED\n");
}

void cmd_characteristics(const RunConfig& config, std::ostream& log) {
  config.validate();
  const InitialDatum datum = config.make_datum();
  const GammaConfig cfg = config.gamma_config();
  const fs::path dir = config.output_dir;

  const double t_smooth = characteristics::blow_up_time(datum, cfg);
  const double validity = characteristics::smooth_validity_time(datum, cfg);
  std::optional<double> shock;
  if (cfg.dim == 1) shock = characteristics::first_shock_time(datum, cfg).time;
  if (!(config.t_end < validity)) {
    throw Error(ErrorKind::kNotSmoothRegime,
                "t_end " + io::format_number(config.t_end) +
                    " is not below the smooth validity time " + io::format_number(validity));
  }

  save_config(config, dir / "config.resolved.json");
  {
    auto out = io::open_output(dir / "characteristics.csv");
    out << "t,x0,x,rho\n";
    std::vector<double> times;
    for (double k = 0.0; k * config.snapshot_cadence < config.t_end; k += 1.0) {
      times.push_back(k * config.snapshot_cadence);
    }
    times.push_back(config.t_end);
    if (times.size() >= 2 && times[times.size() - 2] == times.back()) times.pop_back();

    const std::size_t feet = 257;
    const double lo = cfg.dim == 1 ? datum.support_lo() : std::max(0.0, datum.support_lo());
    const double hi = datum.support_hi();
    for (double t : times) {
      for (std::size_t i = 0; i < feet; ++i) {
        const double x0 = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(feet - 1);
        const auto s = characteristics::advance(x0, t, datum, cfg);
        out << io::format_number(t) << ',' << io::format_number(x0) << ','
            << io::format_number(s.position) << ',' << io::format_number(s.value) << '\n';
      }
    }
    write_or_throw(out, dir / "characteristics.csv");
  }
  json report = {{"version", kConfigVersion},
                 {"gamma", config.gamma},
                 {"dim", config.dim},
                 {"t_end", config.t_end},
                 {"t_star_smooth", t_smooth},
                 {"first_shock_time", optional_number(shock)},
                 {"smooth_validity_time", validity}};
  {
    auto out = io::open_output(dir / "characteristics_report.json");
    out << report.dump(2) << '\n';
    write_or_throw(out, dir / "characteristics_report.json");
  }
  log << "t_star_smooth = " << io::format_number(t_smooth)
      << "\nsmooth validity time = " << io::format_number(validity)
      << "\nfirst shock time = " << (shock ? io::format_number(*shock) : std::string("none"))
      << "\nwrote " << dir.string() << '\n';
}

void cmd_convert(const fs::path& run_dir, std::ostream& log) {
  const RunConfig config = load_config(run_dir / "config.resolved.json");
  const GammaConfig cfg = config.gamma_config();

  const auto measures = read_csv(run_dir / "measure.csv", 6);
  {
    auto out = io::open_output(run_dir / "measure_original.csv");
    io::write_measure_header(out);
    for (const auto& r : measures) {
      const double tau = time_driftfree_to_original(r[0], cfg);
      const double s = 1.0 / spatial_dilation(tau);
      measure::OriginalFrameSample o{.t = r[0], .tau = tau, .dirac_mass = r[1], .ac_mass = r[2],
                                     .support_lo = r[3] * s, .support_hi = r[4] * s,
                                     .diameter = (r[4] - r[3]) * s, .w1_to_dirac = r[5] * s};
      io::write_measure_row(out, o);
    }
    write_or_throw(out, run_dir / "measure_original.csv");
  }
  const auto inverses = read_csv(run_dir / "pseudo_inverse.csv", 3);
  {
    auto out = io::open_output(run_dir / "pseudo_inverse_original.csv");
    io::write_pseudo_inverse_header(out);
    for (const auto& r : inverses) {
      const double tau = time_driftfree_to_original(r[0], cfg);
      out << io::format_number(tau) << ',' << io::format_number(r[1]) << ','
          << io::format_number(r[2] / spatial_dilation(tau)) << '\n';
    }
    write_or_throw(out, run_dir / "pseudo_inverse_original.csv");
  }
  log << "converted " << measures.size() << " measure rows and " << inverses.size()
      << " pseudo-inverse rows to the original frame\n";
}

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return 2;
    case ErrorKind::kIo: return 4;
    default: return 3;
  }
}

void report_error(std::ostream& err, std::string_view kind, const std::string& message, int code) {
  err << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropy measure solutions with condensation at the origin"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  bool quiet = false;
  auto common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "JSON run config");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--output", output, "output directory (overrides output_dir)");
    sub->add_flag("--quiet", quiet, "suppress progress output");
  };
  auto* simulate = app.add_subcommand("simulate", "run both half-line solvers and write artifacts");
  auto* verify = app.add_subcommand("verify", "compare against the closed-form solutions");
  auto* chars = app.add_subcommand("characteristics", "smooth-regime characteristic picture");
  auto* convert = app.add_subcommand("convert", "remap a finished run to the original frame");
  common(simulate, true);
  common(verify, true);
  common(chars, true);
  common(convert, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what(), 2);
    return 2;
  }

  std::ostream null_stream(nullptr);
  std::ostream& log = quiet ? null_stream : out;
  try {
    if (convert->parsed()) {
      if (output.empty() && config_path.empty()) {
        throw Error(ErrorKind::kConfig, "convert needs --output <run dir> or --config");
      }
      const fs::path dir = output.empty() ? fs::path(load_config(config_path).output_dir) : fs::path(output);
      cmd_convert(dir, log);
      return 0;
    }
    RunConfig config = load_config(config_path);
    if (!output.empty()) config.output_dir = output;
    if (simulate->parsed()) cmd_simulate(config, log);
    if (chars->parsed()) cmd_characteristics(config, log);
    if (verify->parsed()) {
      const VerifyReport report = cmd_verify(config);
      print_report(report, out);
      if (!report.passed()) {
        report_error(err, "verification_failed", "one or more verify checks failed", 3);
        return 3;
      }
    }
    return 0;
  } catch (const Error& e) {
    const int code = exit_code(e.kind());
    report_error(err, to_string(e.kind()), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what(), 3);
    return 3;
  }
}

}  // namespace condensate::cli
