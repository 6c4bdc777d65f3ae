// guessga: evolutionary learning in unstable p-guessing games.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "guessga/commands.hpp"
#include "guessga/config.hpp"
#include "guessga/experiment.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  guessga::Overrides overrides;
  std::optional<std::string> config_path;
  bool dry_run = false;
};

void add_common_flags(CLI::App& cmd, CommonFlags& f, bool with_q) {
  auto& o = f.overrides;
  if (with_q) cmd.add_option("--q", o.q, "Probability that p is drawn from the low regime")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--iterations", o.iterations, "Generations per trial");
  cmd.add_option("--n-trials", o.n_trials, "Trials per batch");
  cmd.add_option("--seed", o.seed, "Base seed (default " + std::to_string(guessga::kDefaultSeed) + ")");
  cmd.add_option("--pool-size", o.pool_size, "Strategies per generation");
  cmd.add_option("--rho", o.rho, "Mutation probability");
  cmd.add_option("--epsilon", o.epsilon, "Mutation magnitude");
  cmd.add_option("--payoff", o.payoff, "Payoff model")->check(CLI::IsMember({"quadratic", "winner"}));
  cmd.add_option("--out", o.out_dir, "Output directory (fallback: $GUESSGA_OUT, then ./results)");
  cmd.add_option("--jobs", o.jobs, "Worker threads; output does not depend on it");
  cmd.add_option("--q-grid", o.q_grid, "Comma-separated q values")->delimiter(',');
  cmd.add_option("--epsilon-grid", o.epsilon_grid, "Comma-separated epsilon values")->delimiter(',');
  cmd.add_option("--rho-grid", o.rho_grid, "Comma-separated rho values")->delimiter(',');
  cmd.add_option("--config", f.config_path, "JSON config file (a manifest is a valid config)")->check(CLI::ExistingFile);
  cmd.add_flag("--dry-run", f.dry_run, "Print the materialized config and exit without writing");
}

int run(const guessga::CommandRequest& request, const CommonFlags& flags) {
  std::optional<nlohmann::json> file;
  if (flags.config_path) file = guessga::load_json_file(*flags.config_path);
  const guessga::Config config =
      guessga::resolve_config(file, flags.overrides, std::getenv(guessga::kOutDirEnvVar));
  guessga::validate_request(request, config);

  if (flags.dry_run) {
    nlohmann::json j = guessga::config_to_json(guessga::materialize(request, config));
    j["command"] = request.name;
    j["command_arg"] = request.argument;
    j["out_dir"] = config.out_dir;
    j["jobs"] = config.jobs;
    std::cout << j.dump(2) << '\n';
    return 0;
  }

  const guessga::CommandOutput out = guessga::execute(request, config);
  for (const auto& f : out.files) std::cout << "wrote " << f.string() << '\n';
  std::cout << "wrote " << out.manifest.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genetic-algorithm learning in p-guessing games with unstable regimes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", guessga::kToolVersion);

  CommonFlags flags;
  guessga::CommandRequest request;

  auto* converge = app.add_subcommand("converge", "Trajectory of the average strategy at a fixed q");
  add_common_flags(*converge, flags, true);

  auto* sweep = app.add_subcommand("sweep-q", "Final average strategy across the q grid");
  add_common_flags(*sweep, flags, false);

  auto* calibrate = app.add_subcommand("calibrate", "Deviation from Nash over epsilon, rho or both");
  calibrate->add_option("axis", request.argument, "epsilon | rho | grid")->required();
  add_common_flags(*calibrate, flags, false);

  auto* variance = app.add_subcommand("variance", "Cross-trial variance across the q grid");
  add_common_flags(*variance, flags, false);

  auto* levelk = app.add_subcommand("levelk", "q sweep at a level-k iteration budget");
  levelk->add_option("level", request.argument, "k0 | k-low | k-mid | k-high | k-max")->required();
  add_common_flags(*levelk, flags, false);

  auto* alt = app.add_subcommand("alt-payoff", "q sweep under the winner-take-all payoff");
  add_common_flags(*alt, flags, false);

  std::string manifest_path;
  std::optional<std::string> replay_out;
  std::size_t replay_jobs = 1;
  auto* replay = app.add_subcommand("replay", "Re-run a manifest and rewrite its outputs");
  replay->add_option("manifest", manifest_path, "Manifest written by an earlier run")->required()->check(CLI::ExistingFile);
  replay->add_option("--out", replay_out, "Output directory (default: the manifest's directory)");
  replay->add_option("--jobs", replay_jobs, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (replay->parsed()) {
      const std::filesystem::path dir =
          replay_out ? std::filesystem::path(*replay_out) : std::filesystem::path(manifest_path).parent_path();
      const guessga::CommandOutput out = guessga::replay(manifest_path, dir.empty() ? "." : dir, replay_jobs);
      for (const auto& f : out.files) std::cout << "wrote " << f.string() << '\n';
      std::cout << "wrote " << out.manifest.string() << '\n';
      return 0;
    }
    request.name = app.get_subcommands().front()->get_name();
    return run(request, flags);
  } catch (const guessga::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
