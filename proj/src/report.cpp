#include "guessga/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace guessga {

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << contents;
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void write_trajectory_csv(std::span<const TrialResult> trials, const std::filesystem::path& path) {
  if (trials.empty()) throw InvalidArgument("write_trajectory_csv: no trial results");
  const std::size_t length = trials.front().trajectory.size();
  for (const TrialResult& t : trials) {
    if (t.trajectory.size() != length)
      throw InvalidArgument("write_trajectory_csv: trials have different lengths");
  }

  std::ostringstream csv;
  csv << "iteration,mean_over_trials,std_over_trials,min,max\n";
  std::vector<double> column(trials.size());
  for (std::size_t t = 0; t < length; ++t) {
    for (std::size_t i = 0; i < trials.size(); ++i) column[i] = trials[i].trajectory[t].pool_mean;
    const auto [mean, variance] = mean_and_variance(column);
    const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
    csv << trials.front().trajectory[t].iteration << ',' << format_number(mean) << ','
        << format_number(std::sqrt(variance)) << ',' << format_number(*lo) << ',' << format_number(*hi)
        << '\n';
  }
  write_file(path, csv.str());
}

void write_sweep_csv(const SweepResult& sweep, const std::filesystem::path& path) {
  if (sweep.points.empty()) throw InvalidArgument("write_sweep_csv: empty sweep");
  std::vector<SweepPoint> points = sweep.points;
  std::stable_sort(points.begin(), points.end(),
                   [](const SweepPoint& a, const SweepPoint& b) { return a.axis_value < b.axis_value; });
  std::ostringstream csv;
  csv << "axis_value,mean_final,variance_final,n_trials\n";
  for (const SweepPoint& pt : points) {
    csv << format_number(pt.axis_value) << ',' << format_number(pt.mean_final) << ','
        << format_number(pt.variance_final) << ',' << pt.n_trials << '\n';
  }
  write_file(path, csv.str());
}

void write_grid_csv(const GridResult& grid, const std::filesystem::path& path) {
  std::ostringstream csv;
  csv << "epsilon,rho,deviation_q0,deviation_q1,mean_deviation\n";
  for (std::size_t i = 0; i < grid.epsilon_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.rho_values.size(); ++j) {
      csv << format_number(grid.epsilon_values[i]) << ',' << format_number(grid.rho_values[j]) << ','
          << format_number(grid.deviation_q_zero[i][j]) << ','
          << format_number(grid.deviation_q_one[i][j]) << ','
          << format_number(grid.mean_deviation[i][j]) << '\n';
    }
  }
  write_file(path, csv.str());
}

nlohmann::json manifest_to_json(const RunManifest& m) {
  nlohmann::json j = config_to_json(m.config);
  j["tool_version"] = m.tool_version;
  j["command"] = m.command;
  j["command_arg"] = m.command_arg;
  j["timestamp"] = m.timestamp;
  j["outputs"] = m.outputs;
  j["variance_definition"] = "population";
  return j;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
  if (manifest.command.empty()) throw InvalidArgument("write_manifest: command is empty");
  // nlohmann::json objects are std::map backed, so keys come out sorted.
  write_file(path, manifest_to_json(manifest).dump(2) + "\n");
}

RunManifest read_manifest(const std::filesystem::path& path) {
  const nlohmann::json j = load_json_file(path.string());
  RunManifest m;
  m.config = config_from_json(j, Config{}, true);
  for (const char* key : {"command", "command_arg", "tool_version", "outputs"}) {
    if (!j.contains(key)) throw InvalidArgument("manifest is missing required field '" + std::string(key) + "'");
  }
  try {
    m.command = j.at("command").get<std::string>();
    m.command_arg = j.at("command_arg").get<std::string>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    m.timestamp = j.value("timestamp", "");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("malformed manifest '" + path.string() + "': " + e.what());
  }
  return m;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace guessga
