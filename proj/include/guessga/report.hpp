#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "guessga/config.hpp"
#include "guessga/experiment.hpp"

namespace guessga {

/// File output failure; the message carries the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything needed to re-run an experiment bit-identically.
struct RunManifest {
  std::string tool_version = kToolVersion;
  std::string command;
  std::string command_arg;  // calibration axis or level preset; empty otherwise
  Config config;
  std::string timestamp;             // UTC, ISO 8601
  std::vector<std::string> outputs;  // file names relative to the manifest
};

/// Six significant digits, "%.6g".
std::string format_number(double value);

/// Columns: iteration, mean_over_trials, std_over_trials, min, max.
/// Statistics are over trials of each generation's pool mean.
void write_trajectory_csv(std::span<const TrialResult> trials, const std::filesystem::path& path);

/// Columns: axis_value, mean_final, variance_final, n_trials.
void write_sweep_csv(const SweepResult& sweep, const std::filesystem::path& path);

/// Columns: epsilon, rho, deviation_q0, deviation_q1, mean_deviation,
/// row-major over the epsilon grid.
void write_grid_csv(const GridResult& grid, const std::filesystem::path& path);

nlohmann::json manifest_to_json(const RunManifest& manifest);
/// Canonical JSON: sorted keys, two-space indent, trailing newline.
void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
/// Strict: every configuration field and the command must be present.
RunManifest read_manifest(const std::filesystem::path& path);

std::string utc_timestamp();

}  // namespace guessga
