#include "guessga/commands.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include "guessga/experiment.hpp"

namespace guessga {

namespace {

namespace fs = std::filesystem;

constexpr std::array<std::string_view, 6> kCommands{
    "converge", "sweep-q", "calibrate", "variance", "levelk", "alt-payoff",
};

BatchSpec batch_spec(const Config& c) { return {c.iterations, c.n_trials, c.base_seed, c.jobs}; }

std::string q_label(double q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", q);
  return buf;
}

std::vector<std::string> write_outputs(const CommandRequest& request, const Config& c) {
  const fs::path dir = c.out_dir;
  const BatchSpec spec = batch_spec(c);
  const std::string iters = "_i" + std::to_string(c.iterations);

  if (request.name == "converge") {
    const BatchResult batch = run_batch(c.env, c.ga, spec);
    const std::string name = "converge_q" + q_label(c.env.q) + iters + ".csv";
    write_trajectory_csv(batch.trials, dir / name);
    return {name};
  }
  if (request.name == "sweep-q" || request.name == "variance" || request.name == "alt-payoff") {
    const std::string stem = request.name == "sweep-q" ? "sweep_q" : request.name == "variance" ? "variance" : "alt_payoff";
    const std::string name = stem + iters + ".csv";
    write_sweep_csv(sweep_q(c.q_grid, c.env, c.ga, spec), dir / name);
    return {name};
  }
  if (request.name == "levelk") {
    const std::string name = "levelk_" + request.argument + ".csv";
    const SweepResult sweep = c.iterations == 0 ? initial_pool_sweep(c.q_grid, c.env, c.ga, c.n_trials)
                                                : sweep_q(c.q_grid, c.env, c.ga, spec);
    write_sweep_csv(sweep, dir / name);
    return {name};
  }
  // calibrate
  if (request.argument == "grid") {
    const std::string name = "calibrate_grid" + iters + ".csv";
    write_grid_csv(grid_calibrate(c.epsilon_grid, c.rho_grid, c.env, c.ga, spec), dir / name);
    return {name};
  }
  const CalibrationResult cal =
      request.argument == "epsilon"
          ? calibrate_epsilon(c.epsilon_grid, c.ga.mutation_prob, c.env, c.ga, spec)
          : calibrate_rho(c.rho_grid, c.ga.mutation_step, c.env, c.ga, spec);
  const std::string stem = "calibrate_" + request.argument + iters;
  write_sweep_csv(cal.q_zero, dir / (stem + "_q0.csv"));
  write_sweep_csv(cal.q_one, dir / (stem + "_q1.csv"));
  return {stem + "_q0.csv", stem + "_q1.csv"};
}

std::string manifest_name(const std::vector<std::string>& outputs) {
  std::string stem = fs::path(outputs.front()).stem().string();
  if (outputs.size() > 1 && stem.ends_with("_q0")) stem.resize(stem.size() - 3);
  return stem + ".manifest.json";
}

}  // namespace

void validate_request(const CommandRequest& request, const Config& config) {
  if (std::find(kCommands.begin(), kCommands.end(), request.name) == kCommands.end())
    throw InvalidArgument("unknown command '" + request.name + "'");
  if (request.name == "calibrate") {
    if (request.argument != "epsilon" && request.argument != "rho" && request.argument != "grid")
      throw InvalidArgument("unknown calibration axis '" + request.argument + "' (expected epsilon|rho|grid)");
  } else if (request.name == "levelk") {
    if (!level_iterations(request.argument))
      throw InvalidArgument("unknown level preset '" + request.argument + "'");
  } else if (!request.argument.empty()) {
    throw InvalidArgument("command '" + request.name + "' takes no argument");
  }
  const Config c = materialize(request, config);
  c.validate();
  if (c.iterations < 1 && request.name != "levelk") throw InvalidArgument("iterations must be at least 1");
}

Config materialize(const CommandRequest& request, const Config& config) {
  Config c = config;
  if (request.name == "levelk") {
    if (const auto iters = level_iterations(request.argument)) c.iterations = *iters;
  }
  if (request.name == "alt-payoff") c.ga.payoff_model = PayoffModel::WinnerTakeAll;
  return c;
}

CommandOutput execute(const CommandRequest& request, const Config& config) {
  validate_request(request, config);
  const Config c = materialize(request, config);

  std::error_code ec;
  fs::create_directories(c.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + c.out_dir + "': " + ec.message());

  RunManifest manifest;
  manifest.command = request.name;
  manifest.command_arg = request.argument;
  manifest.config = c;
  manifest.timestamp = utc_timestamp();
  manifest.outputs = write_outputs(request, c);

  CommandOutput out;
  for (const std::string& name : manifest.outputs) out.files.push_back(fs::path(c.out_dir) / name);
  out.manifest = fs::path(c.out_dir) / manifest_name(manifest.outputs);
  write_manifest(manifest, out.manifest);
  return out;
}

CommandOutput replay(const fs::path& manifest_path, const fs::path& out_dir, std::size_t jobs) {
  const RunManifest manifest = read_manifest(manifest_path);
  Config c = manifest.config;
  c.out_dir = out_dir.string();
  c.jobs = jobs;
  return execute({manifest.command, manifest.command_arg}, c);
}

}  // namespace guessga
