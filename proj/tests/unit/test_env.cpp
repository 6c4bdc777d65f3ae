#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "../support/oracles.hpp"
#include "guessga/env.hpp"

using namespace guessga;

TEST_CASE("draw_p respects degenerate regimes") {
  RandomStream rng(7);
  EnvParams env;
  env.q = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const PDraw d = draw_p(env, rng);
    CHECK(d.p > 1.0);
    CHECK(d.p < 2.0);
    CHECK(d.regime == Regime::High);
  }
  env.q = 1.0;
  for (int i = 0; i < 2000; ++i) {
    const PDraw d = draw_p(env, rng);
    CHECK(d.p > 0.0);
    CHECK(d.p < 1.0);
    CHECK(d.regime == Regime::Low);
  }
}

TEST_CASE("draw_p regime frequency tracks q") {
  RandomStream rng(11);
  EnvParams env;
  env.q = 0.5;
  int low = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) low += draw_p(env, rng).p < 1.0;
  CHECK(std::abs(low / double(n) - 0.5) <= 0.02);

  // 3-sigma binomial band for a few other q.
  for (double q : {0.1, 0.3, 0.9}) {
    env.q = q;
    int hits = 0;
    for (int i = 0; i < n; ++i) hits += draw_p(env, rng).regime == Regime::Low;
    const double sigma = std::sqrt(q * (1 - q) / n);
    CHECK(std::abs(hits / double(n) - q) <= 3 * sigma);
  }
}

TEST_CASE("draw_p consumes two stream values") {
  RandomStream rng(3);
  EnvParams env;
  for (int i = 1; i <= 50; ++i) {
    (void)draw_p(env, rng);
    CHECK(rng.consumed() == 2u * i);
  }
}

TEST_CASE("EnvParams validation") {
  EnvParams env;
  CHECK_NOTHROW(env.validate());
  env.q = 1.5;
  CHECK_THROWS_AS(env.validate(), InvalidArgument);
  env = EnvParams{};
  env.low_regime = {1.0, 1.0};
  CHECK_THROWS_AS(env.validate(), InvalidArgument);
  env = EnvParams{};
  env.actions = {10.0, 0.0};
  CHECK_THROWS_AS(env.validate(), InvalidArgument);
  CHECK(EnvParams{}.actions.lo == 0.0);
  CHECK(EnvParams{}.actions.hi == 10.0);
}

TEST_CASE("quadratic_payoff") {
  CHECK(quadratic_payoff(2, 1, 2) == 0.0);
  CHECK(quadratic_payoff(0, 0.5, 10) == -25.0);
  CHECK(quadratic_payoff(5, 2, 5) == -25.0);

  RandomStream rng(5);
  for (int i = 0; i < 200; ++i) {
    const double x = 10 * rng.uniform(), p = 2 * rng.uniform(), xbar = 10 * rng.uniform();
    CHECK(quadratic_payoff(x, p, xbar) <= 0.0);
    // Reflection about the target.
    CHECK(quadratic_payoff(2 * p * xbar - x, p, xbar) == doctest::Approx(quadratic_payoff(x, p, xbar)).epsilon(1e-12));
  }
}

TEST_CASE("quadratic_fitness worked values") {
  std::vector<double> pool(11);
  std::iota(pool.begin(), pool.end(), 0.0);
  CHECK(quadratic_fitness(pool, 5, 1.0) == -110.0);

  const std::vector<double> constant(7, 3.25);
  for (std::size_t i = 0; i < constant.size(); ++i) CHECK(quadratic_fitness(constant, i, 1.0) == 0.0);

  const std::vector<double> pair{0.0, 10.0};
  CHECK(quadratic_fitness(pair, 0, 0.5) == -25.0);
}

TEST_CASE("quadratic_fitness errors") {
  const std::vector<double> one{4.0};
  CHECK_THROWS_WITH_AS(quadratic_fitness(one, 0, 1.0), doctest::Contains("insufficient beliefs"), InvalidArgument);
  const std::vector<double> two{1.0, 2.0};
  CHECK_THROWS_AS(quadratic_fitness(two, 2, 1.0), InvalidArgument);
}

TEST_CASE("quadratic_fitness matches pairwise oracle") {
  RandomStream rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> pool(2 + rng.index_below(12));
    for (double& v : pool) v = 10 * rng.uniform();
    const double p = 2 * rng.uniform();
    const auto expected = oracle::quadratic_fitness_all(pool, p);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const double got = quadratic_fitness(pool, i, p);
      CHECK(std::abs(got - expected[i]) <= 1e-12 * std::max(1.0, std::abs(expected[i])));
    }
  }
}

TEST_CASE("quadratic_fitness is maximized near p times the others' mean") {
  RandomStream rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> pool(6);
    for (double& v : pool) v = 10 * rng.uniform();
    const double p = 2 * rng.uniform();
    double others = 0;
    for (std::size_t j = 1; j < pool.size(); ++j) others += pool[j];
    const double target = p * others / double(pool.size() - 1);

    double best_x = 0, best_f = -1e300;
    for (int k = 0; k <= 1000; ++k) {
      pool[0] = k * 0.01;
      const double f = quadratic_fitness(pool, 0, p);
      if (f > best_f) best_f = f, best_x = pool[0];
    }
    const double clamped = std::clamp(target, 0.0, 10.0);
    CHECK(std::abs(best_x - clamped) <= 0.005 + 1e-9);
  }
}

TEST_CASE("winner_take_all_fitness worked values") {
  const std::vector<double> pair{0.0, 10.0};
  CHECK(winner_take_all_fitness(pair, 0.5) == std::vector<double>{1.0, 1.0});

  const std::vector<double> three{0.0, 5.0, 10.0};
  CHECK(winner_take_all_fitness(three, 1.0) == std::vector<double>{0.5, 2.0, 0.5});
  CHECK(oracle::winner_take_all_all(three, 1.0) == std::vector<double>{0.5, 2.0, 0.5});

  const std::vector<double> constant(5, 2.5);
  const auto f = winner_take_all_fitness(constant, 1.3);
  for (double v : f) CHECK(v == doctest::Approx(1.0));

  const std::vector<double> one{1.0};
  CHECK_THROWS_WITH_AS(winner_take_all_fitness(one, 1.0), doctest::Contains("insufficient beliefs"), InvalidArgument);
}

TEST_CASE("winner_take_all_fitness distributes one point per belief") {
  RandomStream rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> pool(2 + rng.index_below(9));
    // Half-step grid to force ties.
    for (double& v : pool) v = 0.5 * static_cast<double>(rng.index_below(21));
    const double p = 0.25 * static_cast<double>(rng.index_below(8));
    const auto f = winner_take_all_fitness(pool, p);
    CHECK(std::accumulate(f.begin(), f.end(), 0.0) == doctest::Approx(double(pool.size())));
    CHECK(f == oracle::winner_take_all_all(pool, p));
  }
}

TEST_CASE("fitness is invariant under permutation of the other members") {
  RandomStream rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> pool(6);
    for (double& v : pool) v = 0.5 * static_cast<double>(rng.index_below(21));
    const double p = 0.25 + 0.25 * static_cast<double>(rng.index_below(7));
    const auto wta = winner_take_all_fitness(pool, p);
    const double quad0 = quadratic_fitness(pool, 0, p);

    std::vector<double> shuffled = pool;
    for (std::size_t i = shuffled.size() - 1; i > 1; --i) std::swap(shuffled[i], shuffled[1 + rng.index_below(i)]);
    CHECK(quadratic_fitness(shuffled, 0, p) == doctest::Approx(quad0).epsilon(1e-12));
    CHECK(winner_take_all_fitness(shuffled, p)[0] == doctest::Approx(wta[0]));
  }
}

TEST_CASE("payoff model names") {
  CHECK(parse_payoff_model("quadratic") == PayoffModel::QuadraticLoss);
  CHECK(parse_payoff_model("winner") == PayoffModel::WinnerTakeAll);
  CHECK(to_string(PayoffModel::WinnerTakeAll) == "winner");
  CHECK_THROWS_AS(parse_payoff_model("bogus"), InvalidArgument);
}
