#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "guessga/random.hpp"

namespace guessga {

/// Raised when a parameter set or an argument violates its contract.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Closed interval of legal announcements.
struct ActionRange {
  double lo = 0.0;
  double hi = 10.0;

  void validate() const;
  double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
  bool contains(double x) const { return x >= lo && x <= hi; }
  double width() const { return hi - lo; }
};

/// Open interval (lo, hi) from which p is drawn uniformly.
struct OpenInterval {
  double lo = 0.0;
  double hi = 1.0;

  void validate(std::string_view name) const;
  bool contains(double x) const { return x > lo && x < hi; }
};

enum class Regime { Low, High };

std::string_view to_string(Regime r);

/// The unstable environment: with probability q the game parameter p comes
/// from the low regime, otherwise from the high regime.
struct EnvParams {
  double q = 0.5;
  OpenInterval low_regime{0.0, 1.0};
  OpenInterval high_regime{1.0, 2.0};
  ActionRange actions{};

  void validate() const;
};

enum class PayoffModel { QuadraticLoss, WinnerTakeAll };

std::string_view to_string(PayoffModel m);
/// Accepts "quadratic" and "winner".
PayoffModel parse_payoff_model(std::string_view name);

struct PDraw {
  double p;
  Regime regime;
};

/// Draws the regime (one value) and then p uniformly inside it (one value).
/// A draw landing exactly on an endpoint is redrawn; after 100 such
/// rejections the call throws std::runtime_error.
PDraw draw_p(const EnvParams& env, RandomStream& rng);

/// -(x - p * xbar)^2
constexpr double quadratic_payoff(double x, double p, double xbar) noexcept {
  const double d = x - p * xbar;
  return -(d * d);
}

/// Sum of quadratic payoffs of pool[idx] against every other pool member
/// taken as the average behaviour of the other players. The strategy is
/// not scored against itself.
double quadratic_fitness(std::span<const double> pool, std::size_t idx, double p);

/// One prize per belief: for belief pool[j] the target is p * pool[j], and
/// the members k != j closest to it share one point. Entries sum to the
/// pool size.
std::vector<double> winner_take_all_fitness(std::span<const double> pool, double p);

}  // namespace guessga
