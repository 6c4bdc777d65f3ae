#include "guessga/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace guessga {

void GAParams::validate() const {
  if (pool_size < 2) throw InvalidArgument("pool_size must be at least 2");
  if (tournament_size < 1 || tournament_size > pool_size)
    throw InvalidArgument("tournament_size must lie in [1, pool_size]");
  if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0))
    throw InvalidArgument("mutation_prob must lie in [0, 1]");
  if (!(mutation_step >= 0.0) || !std::isfinite(mutation_step))
    throw InvalidArgument("mutation_step must be finite and non-negative");
}

double StrategyPool::mean() const {
  if (values_.empty()) return 0.0;
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double StrategyPool::min() const { return *std::min_element(values_.begin(), values_.end()); }
double StrategyPool::max() const { return *std::max_element(values_.begin(), values_.end()); }

StrategyPool init_pool(const ActionRange& actions, std::size_t pool_size) {
  actions.validate();
  if (pool_size < 2) throw InvalidArgument("init_pool: pool_size must be at least 2");
  std::vector<double> values(pool_size);
  const double step = actions.width() / static_cast<double>(pool_size - 1);
  for (std::size_t i = 0; i < pool_size; ++i) values[i] = actions.lo + step * static_cast<double>(i);
  values.back() = actions.hi;
  return StrategyPool(std::move(values));
}

std::vector<double> evaluate(const StrategyPool& pool, double p, PayoffModel model) {
  if (model == PayoffModel::WinnerTakeAll) return winner_take_all_fitness(pool.values(), p);
  std::vector<double> payoffs(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) payoffs[i] = quadratic_fitness(pool.values(), i, p);
  return payoffs;
}

Parents tournament_select(const StrategyPool& pool, std::span<const double> payoffs,
                          std::size_t tournament_size, RandomStream& rng) {
  const std::size_t n = pool.size();
  if (payoffs.size() != n) throw InvalidArgument("tournament_select: payoffs not aligned with pool");
  if (tournament_size < 1 || tournament_size > n)
    throw InvalidArgument("tournament_select: tournament_size must lie in [1, pool size]");

  // Partial Fisher-Yates: the first tournament_size slots become the sample.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < tournament_size; ++i) {
    std::swap(order[i], order[i + rng.index_below(n - i)]);
  }
  std::span<std::size_t> sample(order.data(), tournament_size);

  auto better = [&](std::size_t x, std::size_t y) {
    return payoffs[x] > payoffs[y] || (payoffs[x] == payoffs[y] && x < y);
  };
  std::size_t first = sample[0];
  for (std::size_t idx : sample) {
    if (better(idx, first)) first = idx;
  }
  if (tournament_size == 1) return {pool[first], pool[first]};
  std::size_t second = n;
  for (std::size_t idx : sample) {
    if (idx == first) continue;
    if (second == n || better(idx, second)) second = idx;
  }
  return {pool[first], pool[second]};
}

double mutate(double child, const GAParams& params, const ActionRange& actions, RandomStream& rng) {
  if (!(rng.uniform() < params.mutation_prob)) return child;
  const double shift = rng.uniform() < 0.5 ? params.mutation_step : -params.mutation_step;
  return actions.clamp(child + shift);
}

std::size_t elite_index(std::span<const double> payoffs) {
  if (payoffs.empty()) throw InvalidArgument("elite: empty payoff vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < payoffs.size(); ++i) {
    if (payoffs[i] > payoffs[best]) best = i;
  }
  return best;
}

double elite(const StrategyPool& pool, std::span<const double> payoffs) {
  if (payoffs.size() != pool.size()) throw InvalidArgument("elite: payoffs not aligned with pool");
  return pool[elite_index(payoffs)];
}

Generation step_generation_at(const StrategyPool& pool, PDraw draw, const ActionRange& actions,
                              const GAParams& params, RandomStream& rng) {
  const std::vector<double> payoffs = evaluate(pool, draw.p, params.payoff_model);
  const std::size_t best = elite_index(payoffs);

  const std::size_t n_children = params.elitism ? pool.size() - 1 : pool.size();
  std::vector<double> next;
  next.reserve(pool.size());
  for (std::size_t c = 0; c < n_children; ++c) {
    const Parents parents = tournament_select(pool, payoffs, params.tournament_size, rng);
    next.push_back(mutate(crossover(parents.a, parents.b), params, actions, rng));
  }
  if (params.elitism) next.push_back(pool[best]);

  Generation out{StrategyPool(std::move(next), pool.generation() + 1), {}};
  out.record = GenerationRecord{
      .iteration = out.pool.generation(),
      .p_drawn = draw.p,
      .regime = draw.regime,
      .pool_mean = out.pool.mean(),
      .elite_value = pool[best],
      .elite_fitness = payoffs[best],
  };
  return out;
}

Generation step_generation(const StrategyPool& pool, const EnvParams& env, const GAParams& params,
                           RandomStream& rng) {
  const PDraw draw = draw_p(env, rng);
  return step_generation_at(pool, draw, env.actions, params, rng);
}

}  // namespace guessga
