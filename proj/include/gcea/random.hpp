#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>

namespace gcea {

/// SplitMix64 finaliser. Used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of run `run_index` inside sweep cell `cell_id`:
///   h = splitmix64(master); h = splitmix64(h ^ cell_id); h = splitmix64(h ^ run_index)
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell_id,
                                    std::uint64_t run_index) noexcept {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ cell_id);
  return splitmix64(h ^ run_index);
}

/// Random source owned by a single run or generator.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard, and
/// draws bounded integers and reals with its own arithmetic so that streams
/// do not depend on the standard library's distribution implementations.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return engine_(); }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::size_t index(std::size_t bound) {
    // Lemire's multiply-shift with rejection.
    const std::uint64_t range = bound;
    __uint128_t m = static_cast<__uint128_t>(engine_()) * range;
    auto low = static_cast<std::uint64_t>(m);
    if (low < range) {
      const std::uint64_t threshold = (0 - range) % range;
      while (low < threshold) {
        m = static_cast<__uint128_t>(engine_()) * range;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::size_t>(m >> 64);
  }

  /// Uniform integer in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + index(hi - lo + 1); }

  /// Uniform real in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform real in [lo, hi].
  double uniform(double lo, double hi) {
    const double v = lo + (hi - lo) * unit();
    return v > hi ? hi : v;
  }

  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gcea
