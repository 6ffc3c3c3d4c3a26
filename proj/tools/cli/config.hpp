#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "condensate/datum.hpp"
#include "condensate/frames.hpp"

namespace condensate::cli {

inline constexpr int kConfigVersion = 1;

struct DatumConfig {
  /// "example36", "piecewise_constant" or "piecewise_linear".
  std::string kind = "example36";
  std::vector<double> breakpoints;
  std::vector<double> values;

  bool operator==(const DatumConfig&) const = default;
};

struct RunConfig {
  int version = kConfigVersion;
  double gamma = 1.0;
  int dim = 1;
  DatumConfig datum;
  std::size_t grid_cells = 1024;
  double cfl = 0.9;
  double t_end = 1.0;
  double snapshot_cadence = 0.25;
  std::string output_dir = "out";
  std::size_t z_count = 1024;
  /// "driftfree" or "original".
  std::string frame = "driftfree";

  bool operator==(const RunConfig&) const = default;

  /// Throws Error(kConfig) on any out-of-range field.
  void validate() const;
  GammaConfig gamma_config() const { return {gamma, dim}; }
  /// Throws Error(kConfig) when the datum tables do not form a valid profile.
  InitialDatum make_datum() const;
};

/// Missing keys keep their defaults; unknown keys and wrong types are
/// Error(kConfig).
RunConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& config);

RunConfig load_config(const std::filesystem::path& path);
void save_config(const RunConfig& config, const std::filesystem::path& path);

}  // namespace condensate::cli
