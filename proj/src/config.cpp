#include "guessga/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <string_view>
#include <tuple>

namespace guessga {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 16> kConfigKeys{
    "q",         "low_regime",    "high_regime", "action_range", "pool_size", "tournament_size",
    "mutation_prob", "mutation_step", "elitism", "payoff",       "iterations", "n_trials",
    "base_seed", "q_grid",        "epsilon_grid", "rho_grid",
};

constexpr std::array<std::string_view, 6> kManifestKeys{
    "tool_version", "command", "command_arg", "timestamp", "outputs", "variance_definition",
};

// Accepted in config files only; they never change the numbers produced.
constexpr std::array<std::string_view, 2> kRuntimeKeys{"out_dir", "jobs"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& keys, std::string_view k) {
  for (auto key : keys) {
    if (key == k) return true;
  }
  return false;
}

json pair(double lo, double hi) { return json::array({lo, hi}); }

template <typename T>
T get(const json& j, std::string_view key) {
  try {
    return j.at(std::string(key)).get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument("config key '" + std::string(key) + "': " + e.what());
  }
}

std::pair<double, double> get_pair(const json& j, std::string_view key) {
  const auto v = get<std::vector<double>>(j, key);
  if (v.size() != 2) throw InvalidArgument("config key '" + std::string(key) + "' must be [lo, hi]");
  return {v[0], v[1]};
}

std::size_t get_count(const json& j, std::string_view key) {
  const json& v = j.at(std::string(key));
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw InvalidArgument("config key '" + std::string(key) + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

void check_grid(const std::vector<double>& grid, std::string_view name, double lo, double hi) {
  if (grid.empty()) throw InvalidArgument(std::string(name) + " must not be empty");
  for (double v : grid) {
    if (!(v >= lo && v <= hi)) {
      throw InvalidArgument(std::string(name) + " values must lie in [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
    }
  }
}

}  // namespace

void Config::validate() const {
  env.validate();
  ga.validate();
  if (n_trials < 1) throw InvalidArgument("n_trials must be at least 1");
  if (jobs < 1) throw InvalidArgument("jobs must be at least 1");
  check_grid(q_grid, "q_grid", 0.0, 1.0);
  check_grid(epsilon_grid, "epsilon_grid", 0.0, HUGE_VAL);
  check_grid(rho_grid, "rho_grid", 0.0, 1.0);
}

json config_to_json(const Config& c) {
  return json{
      {"q", c.env.q},
      {"low_regime", pair(c.env.low_regime.lo, c.env.low_regime.hi)},
      {"high_regime", pair(c.env.high_regime.lo, c.env.high_regime.hi)},
      {"action_range", pair(c.env.actions.lo, c.env.actions.hi)},
      {"pool_size", c.ga.pool_size},
      {"tournament_size", c.ga.tournament_size},
      {"mutation_prob", c.ga.mutation_prob},
      {"mutation_step", c.ga.mutation_step},
      {"elitism", c.ga.elitism},
      {"payoff", std::string(to_string(c.ga.payoff_model))},
      {"iterations", c.iterations},
      {"n_trials", c.n_trials},
      {"base_seed", c.base_seed},
      {"q_grid", c.q_grid},
      {"epsilon_grid", c.epsilon_grid},
      {"rho_grid", c.rho_grid},
  };
}

Config config_from_json(const json& j, const Config& base, bool require_complete) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!contains(kConfigKeys, key) && !contains(kManifestKeys, key) && !contains(kRuntimeKeys, key))
      throw InvalidArgument("unknown config key '" + key + "'");
  }
  if (require_complete) {
    for (auto key : kConfigKeys) {
      if (!j.contains(std::string(key)))
        throw InvalidArgument("manifest is missing required field '" + std::string(key) + "'");
    }
  }

  Config c = base;
  auto has = [&](std::string_view key) { return j.contains(std::string(key)); };
  if (has("q")) c.env.q = get<double>(j, "q");
  if (has("low_regime")) std::tie(c.env.low_regime.lo, c.env.low_regime.hi) = get_pair(j, "low_regime");
  if (has("high_regime")) std::tie(c.env.high_regime.lo, c.env.high_regime.hi) = get_pair(j, "high_regime");
  if (has("action_range")) std::tie(c.env.actions.lo, c.env.actions.hi) = get_pair(j, "action_range");
  if (has("pool_size")) c.ga.pool_size = get_count(j, "pool_size");
  if (has("tournament_size")) c.ga.tournament_size = get_count(j, "tournament_size");
  if (has("mutation_prob")) c.ga.mutation_prob = get<double>(j, "mutation_prob");
  if (has("mutation_step")) c.ga.mutation_step = get<double>(j, "mutation_step");
  if (has("elitism")) c.ga.elitism = get<bool>(j, "elitism");
  if (has("payoff")) c.ga.payoff_model = parse_payoff_model(get<std::string>(j, "payoff"));
  if (has("iterations")) c.iterations = get_count(j, "iterations");
  if (has("n_trials")) c.n_trials = get_count(j, "n_trials");
  if (has("base_seed")) {
    const json& seed = j.at("base_seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0))
      throw InvalidArgument("config key 'base_seed' must be a non-negative integer");
    c.base_seed = seed.get<std::uint64_t>();
  }
  if (has("q_grid")) c.q_grid = get<std::vector<double>>(j, "q_grid");
  if (has("epsilon_grid")) c.epsilon_grid = get<std::vector<double>>(j, "epsilon_grid");
  if (has("rho_grid")) c.rho_grid = get<std::vector<double>>(j, "rho_grid");
  return c;
}

Config resolve_config(const std::optional<json>& file, const Overrides& flags, const char* out_dir_env) {
  Config c;
  if (out_dir_env != nullptr && *out_dir_env != '\0') c.out_dir = out_dir_env;
  if (file) c = config_from_json(*file, c, false);
  if (file && file->contains("out_dir")) c.out_dir = get<std::string>(*file, "out_dir");
  if (file && file->contains("jobs")) c.jobs = get_count(*file, "jobs");

  if (flags.q) c.env.q = *flags.q;
  if (flags.iterations) c.iterations = *flags.iterations;
  if (flags.n_trials) c.n_trials = *flags.n_trials;
  if (flags.seed) c.base_seed = *flags.seed;
  if (flags.pool_size) c.ga.pool_size = *flags.pool_size;
  if (flags.rho) c.ga.mutation_prob = *flags.rho;
  if (flags.epsilon) c.ga.mutation_step = *flags.epsilon;
  if (flags.payoff) c.ga.payoff_model = parse_payoff_model(*flags.payoff);
  if (flags.out_dir) c.out_dir = *flags.out_dir;
  if (flags.jobs) c.jobs = *flags.jobs;
  if (flags.q_grid) c.q_grid = *flags.q_grid;
  if (flags.epsilon_grid) c.epsilon_grid = *flags.epsilon_grid;
  if (flags.rho_grid) c.rho_grid = *flags.rho_grid;
  return c;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace guessga
