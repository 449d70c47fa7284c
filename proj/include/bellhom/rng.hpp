#pragma once

#include <cstdint>

namespace bellhom {

/// SplitMix64 generator (Steele, Lea & Flood 2014). Chosen over the standard
/// library engines because uniform_real_distribution output is not pinned by
/// the C++ standard, and runs must be bit-identical across toolchains.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Stateless mixing of a base seed with grid indices, so that parallel
/// execution order can never affect per-cell results.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t i,
                                 std::uint64_t j = 0) {
  SplitMix64 g(base ^ (0x100000001b3ULL * (i + 1)) ^
               (0xcbf29ce484222325ULL * (j + 1)));
  return g.next();
}

}  // namespace bellhom
