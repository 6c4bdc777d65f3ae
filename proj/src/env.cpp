#include "guessga/env.hpp"

#include <cmath>
#include <limits>

namespace guessga {

namespace {

void require_beliefs(std::span<const double> pool) {
  if (pool.size() < 2) throw InvalidArgument("insufficient beliefs: pool needs at least 2 members");
}

double uniform_open(const OpenInterval& iv, RandomStream& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double p = iv.lo + rng.uniform() * (iv.hi - iv.lo);
    if (iv.contains(p)) return p;
  }
  throw std::runtime_error("draw_p: 100 consecutive draws hit a regime endpoint");
}

}  // namespace

void ActionRange::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw InvalidArgument("action range requires finite lo < hi");
}

void OpenInterval::validate(std::string_view name) const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw InvalidArgument(std::string(name) + " requires finite lo < hi");
}

std::string_view to_string(Regime r) { return r == Regime::Low ? "low" : "high"; }

void EnvParams::validate() const {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("q must lie in [0, 1]");
  low_regime.validate("low_regime");
  high_regime.validate("high_regime");
  actions.validate();
}

std::string_view to_string(PayoffModel m) {
  return m == PayoffModel::QuadraticLoss ? "quadratic" : "winner";
}

PayoffModel parse_payoff_model(std::string_view name) {
  if (name == "quadratic") return PayoffModel::QuadraticLoss;
  if (name == "winner") return PayoffModel::WinnerTakeAll;
  throw InvalidArgument("unknown payoff model '" + std::string(name) + "' (expected quadratic|winner)");
}

PDraw draw_p(const EnvParams& env, RandomStream& rng) {
  // Bernoulli first so the regime decision always uses the same stream slot.
  const bool low = rng.uniform() < env.q;
  const OpenInterval& iv = low ? env.low_regime : env.high_regime;
  return {uniform_open(iv, rng), low ? Regime::Low : Regime::High};
}

double quadratic_fitness(std::span<const double> pool, std::size_t idx, double p) {
  require_beliefs(pool);
  if (idx >= pool.size()) throw InvalidArgument("quadratic_fitness: index out of range");
  const double x = pool[idx];
  double total = 0.0;
  for (std::size_t j = 0; j < pool.size(); ++j) {
    if (j != idx) total += quadratic_payoff(x, p, pool[j]);
  }
  return total;
}

std::vector<double> winner_take_all_fitness(std::span<const double> pool, double p) {
  require_beliefs(pool);
  const std::size_t n = pool.size();
  std::vector<double> points(n, 0.0);
  std::vector<std::size_t> winners;
  winners.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double target = p * pool[j];
    double best = std::numeric_limits<double>::infinity();
    winners.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const double d = std::abs(pool[k] - target);
      if (d < best) {
        best = d;
        winners.assign(1, k);
      } else if (d == best) {
        winners.push_back(k);
      }
    }
    const double share = 1.0 / static_cast<double>(winners.size());
    for (std::size_t k : winners) points[k] += share;
  }
  return points;
}

}  // namespace guessga
