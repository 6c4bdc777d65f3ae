#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "guessga/env.hpp"
#include "guessga/random.hpp"

namespace guessga {

struct GAParams {
  std::size_t pool_size = 10;
  std::size_t tournament_size = 3;
  double mutation_prob = 0.1;  // rho
  double mutation_step = 0.5;  // epsilon
  bool elitism = true;
  PayoffModel payoff_model = PayoffModel::QuadraticLoss;

  void validate() const;
};

/// The learner's current generation of scalar announcements.
class StrategyPool {
 public:
  StrategyPool() = default;
  explicit StrategyPool(std::vector<double> values, std::size_t generation = 0)
      : values_(std::move(values)), generation_(generation) {}

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  /// Number of generation steps that produced this pool (0 for the initial pool).
  std::size_t generation() const { return generation_; }

  double mean() const;
  double min() const;
  double max() const;

  friend bool operator==(const StrategyPool&, const StrategyPool&) = default;

 private:
  std::vector<double> values_;
  std::size_t generation_ = 0;
};

struct GenerationRecord {
  std::size_t iteration = 0;  // generation number of the pool this step produced
  double p_drawn = 0.0;
  Regime regime = Regime::Low;
  double pool_mean = 0.0;      // mean of the produced pool
  double elite_value = 0.0;    // best member of the evaluated pool
  double elite_fitness = 0.0;

  friend bool operator==(const GenerationRecord&, const GenerationRecord&) = default;
};

struct Parents {
  double a;
  double b;
};

struct Generation {
  StrategyPool pool;
  GenerationRecord record;
};

/// pool_size values evenly spaced over [lo, hi], both endpoints included.
StrategyPool init_pool(const ActionRange& actions, std::size_t pool_size);

/// Payoff of every pool member under the drawn p.
std::vector<double> evaluate(const StrategyPool& pool, double p, PayoffModel model);

/// Samples `tournament_size` distinct indices (one stream value each) and
/// returns the two best-paid sampled values, ties going to the lower pool
/// index. A tournament of one yields the same value twice.
Parents tournament_select(const StrategyPool& pool, std::span<const double> payoffs,
                          std::size_t tournament_size, RandomStream& rng);

constexpr double crossover(double parent_a, double parent_b) noexcept {
  return (parent_a + parent_b) / 2.0;
}

/// With probability rho moves the child by +/- epsilon (equal odds) and clamps
/// it to the action range. Consumes two stream values when the mutation fires,
/// one otherwise.
double mutate(double child, const GAParams& params, const ActionRange& actions, RandomStream& rng);

/// Index of the highest payoff; lowest index wins ties.
std::size_t elite_index(std::span<const double> payoffs);
double elite(const StrategyPool& pool, std::span<const double> payoffs);

/// One full generation: draw p, evaluate, breed pool_size - 1 children (or
/// pool_size without elitism), append the unmutated elite and drop the old
/// generation.
Generation step_generation(const StrategyPool& pool, const EnvParams& env, const GAParams& params,
                           RandomStream& rng);

/// Same as step_generation with the environment draw supplied by the caller.
Generation step_generation_at(const StrategyPool& pool, PDraw draw, const ActionRange& actions,
                              const GAParams& params, RandomStream& rng);

}  // namespace guessga
