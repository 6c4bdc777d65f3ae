#include "guessga/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "guessga/random.hpp"

namespace guessga {

namespace {

constexpr std::array kLevelPresets{
    LevelPreset{"k0", 0},       LevelPreset{"k-low", 10},     LevelPreset{"k-mid", 100},
    LevelPreset{"k-high", 1000}, LevelPreset{"k-max", 5000},
};

struct AxisConfig {
  EnvParams env;
  GAParams params;
};

// Runs one batch per axis value. `measure` maps (axis index, batch) to the
// reported (mean, variance) pair.
template <typename Configure, typename Measure>
SweepResult sweep_axis(std::string axis_name, std::span<const double> values, Configure configure,
                       const BatchSpec& spec, Measure measure) {
  SweepResult result{std::move(axis_name), {}};
  result.points.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const AxisConfig cfg = configure(values[k]);
    BatchSpec point_spec = spec;
    point_spec.base_seed = derive_seed(spec.base_seed, k);
    const BatchResult batch = run_batch(cfg.env, cfg.params, point_spec);
    const auto [mean, variance] = measure(cfg.env, batch);
    result.points.push_back({values[k], mean, variance, spec.n_trials});
  }
  std::stable_sort(result.points.begin(), result.points.end(),
                   [](const SweepPoint& a, const SweepPoint& b) { return a.axis_value < b.axis_value; });
  return result;
}

std::pair<double, double> final_mean_stats(const EnvParams&, const BatchResult& batch) {
  return {batch.mean_final, batch.variance_final};
}

std::pair<double, double> nash_deviation_stats(const EnvParams& env, const BatchResult& batch) {
  return {deviation_from_nash(batch.mean_final, env.q, NashTarget::for_range(env.actions)),
          batch.variance_final};
}

void require_batch(const BatchSpec& spec) {
  if (spec.iterations < 1) throw InvalidArgument("iterations must be at least 1");
  if (spec.n_trials < 1) throw InvalidArgument("n_trials must be at least 1");
}

CalibrationResult calibrate_axis(std::string axis, std::span<const double> values,
                                 const EnvParams& env_template, const GAParams& base,
                                 const BatchSpec& spec, void (*apply)(GAParams&, double)) {
  CalibrationResult out;
  for (double q : {0.0, 1.0}) {
    auto configure = [&](double v) {
      AxisConfig cfg{env_template, base};
      cfg.env.q = q;
      apply(cfg.params, v);
      return cfg;
    };
    SweepResult sweep = sweep_axis(axis, values, configure, spec, nash_deviation_stats);
    (q == 0.0 ? out.q_zero : out.q_one) = std::move(sweep);
  }
  return out;
}

}  // namespace

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

std::pair<double, double> mean_and_variance(std::span<const double> xs) {
  if (xs.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, ss / static_cast<double>(xs.size())};
}

TrialResult run_trial(const EnvParams& env, const GAParams& params, std::size_t iterations,
                      std::uint64_t seed) {
  if (iterations < 1) throw InvalidArgument("run_trial: iterations must be at least 1");
  env.validate();
  params.validate();

  RandomStream rng(seed);
  TrialResult result;
  result.seed = seed;
  result.trajectory.reserve(iterations);
  StrategyPool pool = init_pool(env.actions, params.pool_size);
  for (std::size_t t = 0; t < iterations; ++t) {
    Generation g = step_generation(pool, env, params, rng);
    result.trajectory.push_back(g.record);
    pool = std::move(g.pool);
  }
  result.final_mean = pool.mean();
  result.final_pool = std::move(pool);
  return result;
}

BatchResult run_batch(const EnvParams& env, const GAParams& params, const BatchSpec& spec) {
  require_batch(spec);
  env.validate();
  params.validate();

  BatchResult out;
  out.trials.resize(spec.n_trials);
  parallel_for(spec.n_trials, spec.jobs, [&](std::size_t i) {
    out.trials[i] = run_trial(env, params, spec.iterations, derive_seed(spec.base_seed, i));
  });

  std::vector<double> finals;
  finals.reserve(out.trials.size());
  for (const TrialResult& t : out.trials) finals.push_back(t.final_mean);
  std::tie(out.mean_final, out.variance_final) = mean_and_variance(finals);
  return out;
}

SweepResult sweep_q(std::span<const double> q_values, const EnvParams& env_template,
                    const GAParams& params, const BatchSpec& spec) {
  for (double q : q_values) {
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("sweep_q: every q must lie in [0, 1]");
  }
  auto configure = [&](double q) {
    AxisConfig cfg{env_template, params};
    cfg.env.q = q;
    return cfg;
  };
  return sweep_axis("q", q_values, configure, spec, final_mean_stats);
}

SweepResult initial_pool_sweep(std::span<const double> q_values, const EnvParams& env_template,
                               const GAParams& params, std::size_t n_trials) {
  if (n_trials < 1) throw InvalidArgument("n_trials must be at least 1");
  const double mean = init_pool(env_template.actions, params.pool_size).mean();
  SweepResult result{"q", {}};
  for (double q : q_values) result.points.push_back({q, mean, 0.0, n_trials});
  std::stable_sort(result.points.begin(), result.points.end(),
                   [](const SweepPoint& a, const SweepPoint& b) { return a.axis_value < b.axis_value; });
  return result;
}

double deviation_from_nash(double mean_final, double q, const NashTarget& targets) {
  if (q == 0.0) return std::abs(mean_final - targets.q_zero_target);
  if (q == 1.0) return std::abs(mean_final - targets.q_one_target);
  throw InvalidArgument("no unique Nash reference for interior q");
}

CalibrationResult calibrate_epsilon(std::span<const double> epsilon_values, double rho_fixed,
                                    const EnvParams& env_template, const GAParams& params,
                                    const BatchSpec& spec) {
  GAParams base = params;
  base.mutation_prob = rho_fixed;
  return calibrate_axis("epsilon", epsilon_values, env_template, base, spec,
                        [](GAParams& p, double v) { p.mutation_step = v; });
}

CalibrationResult calibrate_rho(std::span<const double> rho_values, double epsilon_fixed,
                                const EnvParams& env_template, const GAParams& params,
                                const BatchSpec& spec) {
  GAParams base = params;
  base.mutation_step = epsilon_fixed;
  return calibrate_axis("rho", rho_values, env_template, base, spec,
                        [](GAParams& p, double v) { p.mutation_prob = v; });
}

GridResult grid_calibrate(std::span<const double> epsilon_values, std::span<const double> rho_values,
                          const EnvParams& env_template, const GAParams& params,
                          const BatchSpec& spec) {
  require_batch(spec);
  if (epsilon_values.empty() || rho_values.empty())
    throw InvalidArgument("grid_calibrate: both grids must be nonempty");

  GridResult grid;
  grid.epsilon_values.assign(epsilon_values.begin(), epsilon_values.end());
  grid.rho_values.assign(rho_values.begin(), rho_values.end());
  const std::size_t rows = epsilon_values.size();
  const std::size_t cols = rho_values.size();
  grid.deviation_q_zero.assign(rows, std::vector<double>(cols));
  grid.deviation_q_one.assign(rows, std::vector<double>(cols));
  grid.mean_deviation.assign(rows, std::vector<double>(cols));

  const NashTarget targets = NashTarget::for_range(env_template.actions);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      GAParams cell = params;
      cell.mutation_step = epsilon_values[i];
      cell.mutation_prob = rho_values[j];
      BatchSpec cell_spec = spec;
      cell_spec.base_seed = derive_seed(spec.base_seed, i * cols + j);

      EnvParams env = env_template;
      env.q = 0.0;
      const double dev0 = deviation_from_nash(run_batch(env, cell, cell_spec).mean_final, 0.0, targets);
      env.q = 1.0;
      const double dev1 = deviation_from_nash(run_batch(env, cell, cell_spec).mean_final, 1.0, targets);

      grid.deviation_q_zero[i][j] = dev0;
      grid.deviation_q_one[i][j] = dev1;
      grid.mean_deviation[i][j] = (dev0 + dev1) / 2.0;
    }
  }
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (grid.mean_deviation[i][j] < grid.best_deviation()) {
        grid.argmin_epsilon = i;
        grid.argmin_rho = j;
      }
    }
  }
  return grid;
}

std::span<const LevelPreset> level_presets() { return kLevelPresets; }

std::optional<std::size_t> level_iterations(std::string_view name) {
  for (const LevelPreset& preset : kLevelPresets) {
    if (preset.name == name) return preset.iterations;
  }
  return std::nullopt;
}

std::vector<double> default_q_grid() {
  std::vector<double> grid(11);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<double>(i) / 10.0;
  return grid;
}

}  // namespace guessga
