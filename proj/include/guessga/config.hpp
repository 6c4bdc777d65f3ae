#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "guessga/env.hpp"
#include "guessga/ga.hpp"

namespace guessga {

inline constexpr std::uint64_t kDefaultSeed = 20211018;
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kDefaultOutDir = "results";
inline constexpr const char* kOutDirEnvVar = "GUESSGA_OUT";

/// Everything a subcommand needs. Defaults reproduce the calibrated setup.
struct Config {
  EnvParams env{.q = 0.0};
  GAParams ga{};
  std::size_t iterations = 100;
  std::size_t n_trials = 100;
  std::uint64_t base_seed = kDefaultSeed;
  std::vector<double> q_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<double> epsilon_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.5, 2.0, 3.0, 5.0};
  std::vector<double> rho_grid = {0.0, 0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0};

  // Not part of the reproducibility record.
  std::string out_dir = kDefaultOutDir;
  std::size_t jobs = 1;

  /// Throws InvalidArgument on the first violated constraint.
  void validate() const;
};

/// Command-line values; unset fields defer to the config file, then defaults.
struct Overrides {
  std::optional<double> q;
  std::optional<std::size_t> iterations;
  std::optional<std::size_t> n_trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> pool_size;
  std::optional<double> rho;
  std::optional<double> epsilon;
  std::optional<std::string> payoff;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> jobs;
  std::optional<std::vector<double>> q_grid;
  std::optional<std::vector<double>> epsilon_grid;
  std::optional<std::vector<double>> rho_grid;
};

/// The result-determining fields, every one materialized.
nlohmann::json config_to_json(const Config& config);

/// Reads config keys from `j` on top of `base`. With `require_complete`
/// every result-determining key must be present. Unknown keys are rejected,
/// except manifest bookkeeping keys.
Config config_from_json(const nlohmann::json& j, const Config& base, bool require_complete);

/// flag > config file > GUESSGA_OUT (output directory only) > built-in default.
Config resolve_config(const std::optional<nlohmann::json>& file, const Overrides& flags,
                      const char* out_dir_env);

nlohmann::json load_json_file(const std::string& path);

}  // namespace guessga
