#pragma once

// Randomized GA configurations and the generation-level invariants checked
// against them. Shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "guessga/ga.hpp"
#include "guessga/random.hpp"

namespace guessga::props {

struct Case {
  EnvParams env;
  GAParams params;
  std::uint64_t seed = 0;
  std::size_t generations = 30;
};

inline Case random_case(std::uint64_t case_seed) {
  RandomStream g(derive_seed(0xC0FFEE, case_seed));
  Case c;
  c.seed = derive_seed(case_seed, 1);
  const double lo = -5.0 + 10.0 * g.uniform();
  c.env.actions = {lo, lo + 0.5 + 20.0 * g.uniform()};
  c.env.q = g.uniform();
  c.params.pool_size = 2 + g.index_below(14);
  c.params.tournament_size = 1 + g.index_below(c.params.pool_size);
  c.params.mutation_prob = g.uniform();
  c.params.mutation_step = 3.0 * g.uniform();
  c.params.elitism = g.uniform() < 0.8;
  c.params.payoff_model = g.uniform() < 0.7 ? PayoffModel::QuadraticLoss : PayoffModel::WinnerTakeAll;
  c.generations = 10 + g.index_below(40);
  return c;
}

/// Random starting pool inside the action range.
inline StrategyPool random_pool(const Case& c, RandomStream& g) {
  std::vector<double> v(c.params.pool_size);
  for (double& x : v) x = c.env.actions.lo + g.uniform() * c.env.actions.width();
  return StrategyPool(v);
}

// Each check returns an empty string on success, otherwise a description.

inline std::string check_size_and_bounds(const Case& c) {
  RandomStream rng(c.seed);
  StrategyPool pool = random_pool(c, rng);
  for (std::size_t t = 0; t < c.generations; ++t) {
    pool = step_generation(pool, c.env, c.params, rng).pool;
    if (pool.size() != c.params.pool_size) return "pool size changed at generation " + std::to_string(t);
    for (double v : pool.values()) {
      if (!c.env.actions.contains(v)) return "value " + std::to_string(v) + " left the action range";
    }
  }
  return {};
}

inline std::string check_elite_carry_over(Case c) {
  c.params.elitism = true;
  RandomStream rng(c.seed);
  StrategyPool pool = random_pool(c, rng);
  for (std::size_t t = 0; t < c.generations; ++t) {
    const Generation g = step_generation(pool, c.env, c.params, rng);
    const auto vals = g.pool.values();
    if (std::find(vals.begin(), vals.end(), g.record.elite_value) == vals.end())
      return "elite missing from generation " + std::to_string(t + 1);
    pool = g.pool;
  }
  return {};
}

inline std::string check_range_non_expansion(Case c) {
  c.params.mutation_prob = 0.0;
  RandomStream rng(c.seed);
  StrategyPool pool = random_pool(c, rng);
  for (std::size_t t = 0; t < c.generations; ++t) {
    const StrategyPool next = step_generation(pool, c.env, c.params, rng).pool;
    if (next.min() < pool.min() || next.max() > pool.max())
      return "range expanded at generation " + std::to_string(t + 1);
    pool = next;
  }
  return {};
}

/// Freezes p for the whole run and requires the recorded elite fitness to
/// never decrease. Uses rho = 0 and the quadratic payoff.
inline std::string check_fixed_p_elite_monotone(Case c) {
  c.params.mutation_prob = 0.0;
  c.params.elitism = true;
  c.params.payoff_model = PayoffModel::QuadraticLoss;
  RandomStream rng(c.seed);
  StrategyPool pool = random_pool(c, rng);
  const PDraw frozen = draw_p(c.env, rng);
  double previous = -1e300;
  for (std::size_t t = 0; t < c.generations; ++t) {
    const Generation g = step_generation_at(pool, frozen, c.env.actions, c.params, rng);
    const double slack = 1e-9 * std::max(1.0, std::abs(previous));
    if (g.record.elite_fitness < previous - slack)
      return "elite fitness fell from " + std::to_string(previous) + " to " +
             std::to_string(g.record.elite_fitness) + " at generation " + std::to_string(t + 1);
    previous = g.record.elite_fitness;
    pool = g.pool;
  }
  return {};
}

/// Same yardstick version: under frozen p, the new elite scored against the
/// new pool is at least as good as the carried-over elite scored against
/// that same pool.
inline std::string check_fixed_p_elite_beats_carried(const Case& c) {
  GAParams params = c.params;
  params.elitism = true;
  RandomStream rng(c.seed);
  StrategyPool pool = random_pool(c, rng);
  const PDraw frozen = draw_p(c.env, rng);
  for (std::size_t t = 0; t < c.generations; ++t) {
    const Generation g = step_generation_at(pool, frozen, c.env.actions, params, rng);
    const std::vector<double> payoffs = evaluate(g.pool, frozen.p, params.payoff_model);
    const std::size_t carried = g.pool.size() - 1;  // the elite slot
    if (g.pool[carried] != g.record.elite_value) return "elite slot does not hold the elite";
    if (payoffs[elite_index(payoffs)] < payoffs[carried])
      return "new elite worse than carried elite at generation " + std::to_string(t + 1);
    pool = g.pool;
  }
  return {};
}

inline std::string check_bit_determinism(const Case& c) {
  auto run = [&] {
    RandomStream rng(c.seed);
    StrategyPool pool = random_pool(c, rng);
    std::vector<GenerationRecord> records;
    for (std::size_t t = 0; t < c.generations; ++t) {
      Generation g = step_generation(pool, c.env, c.params, rng);
      records.push_back(g.record);
      pool = std::move(g.pool);
    }
    return std::make_pair(pool, records);
  };
  return run() == run() ? std::string{} : "two identical runs diverged";
}

}  // namespace guessga::props
