#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace trotter::lab {

/// Bad or unknown configuration; the message names the offending key.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A computation could not produce a value (degenerate fit, undefined
/// phase, dimension over the dense limit).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kToolVersion = "0.1.0";

struct RunOptions {
  std::optional<std::filesystem::path> output_dir;  // overrides the config
  int jobs = 0;                                     // 0 = runtime default
};

struct RunOutcome {
  std::filesystem::path csv_path;
  std::filesystem::path manifest_path;
  nlohmann::json manifest;
};

/// Runs one experiment from a config object, or re-runs a previously
/// emitted manifest (recognized by its "tool_version" + "config" keys).
/// Writes <experiment>.csv and manifest.json into the output directory.
/// Identical config + master_seed always produce byte-identical CSVs.
RunOutcome run_experiment(const nlohmann::json& config_or_manifest,
                          const RunOptions& options = {});

RunOutcome run_experiment_file(const std::filesystem::path& config_path,
                               const RunOptions& options = {});

/// Human-readable schema: keys, defaults, output columns.
std::string describe_experiment(const std::string& name);

std::vector<std::string> experiment_names();

}  // namespace trotter::lab
