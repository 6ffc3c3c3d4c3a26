#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "condensate/errors.hpp"
#include "condensate/io.hpp"

namespace condensate::cli {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::kConfig, what); }

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    bad(std::string("config key '") + key + "': " + e.what());
  }
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) bad("unknown key '" + key + "' in " + where);
  }
}

}  // namespace

void RunConfig::validate() const {
  if (version != kConfigVersion) bad("unsupported config version " + std::to_string(version));
  if (!(gamma > 0.0) || !std::isfinite(gamma)) bad("gamma must be positive");
  if (dim < 1) bad("dim must be a positive integer");
  if (grid_cells < 8) bad("grid_cells must be at least 8");
  if (!(cfl > 0.0 && cfl <= 1.0)) bad("cfl must lie in (0, 1]");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) bad("t_end must be nonnegative");
  if (!(snapshot_cadence > 0.0) || !std::isfinite(snapshot_cadence)) {
    bad("snapshot_cadence must be positive");
  }
  if (z_count < 16) bad("z_count must be at least 16");
  if (frame != "driftfree" && frame != "original") bad("frame must be 'driftfree' or 'original'");
  if (output_dir.empty()) bad("output_dir must not be empty");
  if (datum.kind != "example36" && datum.kind != "piecewise_constant" &&
      datum.kind != "piecewise_linear") {
    bad("unknown datum kind '" + datum.kind + "'");
  }
  if (datum.kind == "example36" && (!datum.breakpoints.empty() || !datum.values.empty())) {
    bad("example36 takes no breakpoints or values");
  }
}

InitialDatum RunConfig::make_datum() const {
  try {
    if (datum.kind == "example36") return InitialDatum::example36(gamma);
    if (datum.kind == "piecewise_constant") {
      return InitialDatum::piecewise_constant(datum.breakpoints, datum.values);
    }
    if (datum.kind == "piecewise_linear") {
      return InitialDatum::piecewise_linear(datum.breakpoints, datum.values);
    }
  } catch (const Error& e) {
    bad(std::string("invalid datum: ") + e.what());
  }
  bad("unknown datum kind '" + datum.kind + "'");
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) bad("config must be a JSON object");
  reject_unknown(j,
                 {"version", "gamma", "dim", "datum", "grid_cells", "cfl", "t_end",
                  "snapshot_cadence", "output_dir", "z_count", "frame"},
                 "config");
  RunConfig c;
  read(j, "version", c.version);
  read(j, "gamma", c.gamma);
  read(j, "dim", c.dim);
  read(j, "grid_cells", c.grid_cells);
  read(j, "cfl", c.cfl);
  read(j, "t_end", c.t_end);
  read(j, "snapshot_cadence", c.snapshot_cadence);
  read(j, "output_dir", c.output_dir);
  read(j, "z_count", c.z_count);
  read(j, "frame", c.frame);
  if (j.contains("datum")) {
    const json& d = j.at("datum");
    if (!d.is_object()) bad("datum must be an object");
    reject_unknown(d, {"kind", "breakpoints", "values"}, "datum");
    read(d, "kind", c.datum.kind);
    read(d, "breakpoints", c.datum.breakpoints);
    read(d, "values", c.datum.values);
  }
  c.validate();
  return c;
}

json to_json(const RunConfig& c) {
  json d = {{"kind", c.datum.kind}};
  if (c.datum.kind != "example36") {
    d["breakpoints"] = c.datum.breakpoints;
    d["values"] = c.datum.values;
  }
  return {{"version", c.version},
          {"gamma", c.gamma},
          {"dim", c.dim},
          {"datum", d},
          {"grid_cells", c.grid_cells},
          {"cfl", c.cfl},
          {"t_end", c.t_end},
          {"snapshot_cadence", c.snapshot_cadence},
          {"output_dir", c.output_dir},
          {"z_count", c.z_count},
          {"frame", c.frame}};
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    bad("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

void save_config(const RunConfig& config, const std::filesystem::path& path) {
  std::ofstream out = io::open_output(path);
  out << to_json(config).dump(2) << '\n';
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path.string());
}

}  // namespace condensate::cli
