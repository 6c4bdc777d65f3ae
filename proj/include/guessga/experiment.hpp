#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "guessga/env.hpp"
#include "guessga/ga.hpp"

namespace guessga {

struct TrialResult {
  std::uint64_t seed = 0;
  std::vector<GenerationRecord> trajectory;
  StrategyPool final_pool;
  double final_mean = 0.0;
};

/// How a batch of trials is run. `jobs` bounds worker threads and never
/// changes the numbers produced.
struct BatchSpec {
  std::size_t iterations = 100;
  std::size_t n_trials = 100;
  std::uint64_t base_seed = 0;
  std::size_t jobs = 1;
};

struct BatchResult {
  double mean_final = 0.0;
  double variance_final = 0.0;  // population variance of per-trial final means
  std::vector<TrialResult> trials;
};

struct SweepPoint {
  double axis_value = 0.0;
  double mean_final = 0.0;
  double variance_final = 0.0;
  std::size_t n_trials = 0;
};

struct SweepResult {
  std::string axis_name;
  std::vector<SweepPoint> points;  // sorted by axis_value
};

/// Equilibrium announcements in the two persistent environments.
struct NashTarget {
  double q_zero_target = 10.0;  // p always above 1: the range ceiling
  double q_one_target = 0.0;    // p always below 1: the range floor

  static NashTarget for_range(const ActionRange& actions) { return {actions.hi, actions.lo}; }
};

/// Per-axis calibration curves, y = deviation from the Nash target.
struct CalibrationResult {
  SweepResult q_zero;
  SweepResult q_one;
};

struct GridResult {
  std::vector<double> epsilon_values;
  std::vector<double> rho_values;
  // [epsilon index][rho index]
  std::vector<std::vector<double>> deviation_q_zero;
  std::vector<std::vector<double>> deviation_q_one;
  std::vector<std::vector<double>> mean_deviation;
  std::size_t argmin_epsilon = 0;
  std::size_t argmin_rho = 0;

  double best_epsilon() const { return epsilon_values.at(argmin_epsilon); }
  double best_rho() const { return rho_values.at(argmin_rho); }
  double best_deviation() const { return mean_deviation.at(argmin_epsilon).at(argmin_rho); }
};

/// Runs fn(0) ... fn(n - 1) on up to `jobs` threads. The first exception
/// thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

/// Population mean and variance, accumulated in index order.
std::pair<double, double> mean_and_variance(std::span<const double> xs);

TrialResult run_trial(const EnvParams& env, const GAParams& params, std::size_t iterations,
                      std::uint64_t seed);

/// Trial i is seeded with derive_seed(base_seed, i).
BatchResult run_batch(const EnvParams& env, const GAParams& params, const BatchSpec& spec);

/// One batch per q; point k uses base seed derive_seed(spec.base_seed, k).
SweepResult sweep_q(std::span<const double> q_values, const EnvParams& env_template,
                    const GAParams& params, const BatchSpec& spec);

/// The q-axis as seen before any learning: every point is the initial pool mean.
SweepResult initial_pool_sweep(std::span<const double> q_values, const EnvParams& env_template,
                               const GAParams& params, std::size_t n_trials);

/// |mean_final - target(q)|; only defined for q = 0 and q = 1.
double deviation_from_nash(double mean_final, double q, const NashTarget& targets);

CalibrationResult calibrate_epsilon(std::span<const double> epsilon_values, double rho_fixed,
                                    const EnvParams& env_template, const GAParams& params,
                                    const BatchSpec& spec);

CalibrationResult calibrate_rho(std::span<const double> rho_values, double epsilon_fixed,
                                const EnvParams& env_template, const GAParams& params,
                                const BatchSpec& spec);

/// Full epsilon x rho sweep; the argmin cell minimizes the average of the
/// q = 0 and q = 1 deviations (first cell in row-major order on ties).
GridResult grid_calibrate(std::span<const double> epsilon_values, std::span<const double> rho_values,
                          const EnvParams& env_template, const GAParams& params,
                          const BatchSpec& spec);

/// Iteration budgets standing in for depth of reasoning.
struct LevelPreset {
  std::string_view name;
  std::size_t iterations;
};

std::span<const LevelPreset> level_presets();
std::optional<std::size_t> level_iterations(std::string_view name);

/// {0, 0.1, ..., 1.0}
std::vector<double> default_q_grid();

}  // namespace guessga
