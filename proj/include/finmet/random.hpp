#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace finmet {

// Seeded random source with hand-rolled output mappings so that results do
// not depend on the standard library's (unspecified) distribution
// implementations. mt19937_64 itself is pinned by the standard.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1) with 53 random bits
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // unbiased integer in [0, n) via rejection
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % n;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  // decorrelated child seed for sub-streams (restart index, sample index...)
  std::uint64_t child_seed(std::uint64_t index) const {
    std::uint64_t z = seed_mix_ + index * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  static RandomSource for_stream(std::uint64_t seed, std::uint64_t index) {
    RandomSource base(seed);
    return RandomSource(base.child_seed(index));
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_mix_ = engine_();  // consumed once, keeps child streams apart
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace finmet
