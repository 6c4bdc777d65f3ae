#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace guessga {

/// SplitMix64 finalizer. Used to turn (seed, index) pairs into well-spread
/// engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Deterministic child seed for the `index`-th sub-run of `base`.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(base) ^ (index * 0xD6E8FEB86659FD93ULL + 0x632BE59BD9B4E019ULL));
}

/// A seeded stream of uniform doubles.
///
/// Draws are computed from the raw 64-bit engine output rather than through
/// std::uniform_real_distribution, whose algorithm is left to the standard
/// library; this keeps trials bit-reproducible across toolchains.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() {
    ++consumed_;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform index in [0, n). Consumes one value. n must be positive.
  std::size_t index_below(std::size_t n) {
    auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  /// Number of values drawn so far.
  std::uint64_t consumed() const noexcept { return consumed_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t consumed_ = 0;
};

}  // namespace guessga
