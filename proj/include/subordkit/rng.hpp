#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace subordkit {

/// Default seed for every sampler in the project.
inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEEULL;

/// SplitMix64: tiny state, solid statistical quality, and bit-identical
/// streams across platforms, which keeps seeded reports reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) built from the top 53 bits of one draw.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Area-uniform point in the open disk of the given radius.
  std::complex<double> in_disk(double radius) {
    const double r = radius * std::sqrt(uniform01());
    const double phi = 2.0 * std::numbers::pi * uniform01();
    return std::polar(r, phi);
  }

 private:
  std::uint64_t state_;
};

/// Decorrelated child seed for sample index `stream`; lets grid sweeps draw
/// per-sample generators whose output is independent of iteration order.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace subordkit
