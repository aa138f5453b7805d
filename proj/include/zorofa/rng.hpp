#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace zorofa {

// splitmix64 finalizer; used to derive independent substream seeds from a
// (base, tag) pair so that e.g. the direction bank and the starting-point
// draw never share state.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic random source. mt19937_64 output is fixed by the standard,
// and all value mappings below are hand-rolled, so streams are bit-identical
// across platforms (std::*_distribution would not be).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t bits() { return engine_(); }

  std::uint64_t seed() const { return seed_; }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform01_open() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  // Standard normal via Box-Muller, caching the second variate.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = uniform01_open();
    double v = uniform01();
    double r = std::sqrt(-2.0 * std::log(u));
    double a = 6.283185307179586476925286766559 * v;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // +1 or -1 with equal probability.
  double rademacher() { return (engine_() >> 63) ? 1.0 : -1.0; }

  // Uniform integer in [0, bound) by rejection; unbiased.
  std::uint64_t uniform_int(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_int: bound must be positive");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Fresh generator whose seed depends on this one's seed and the tag only,
  // not on how much of this stream has been consumed.
  Rng substream(std::uint64_t tag) const { return Rng(derive_seed(seed_, tag)); }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Fixed tags for the independent random streams used across a run. Keeping
// them in one place guarantees no two consumers collide.
namespace streams {
inline constexpr std::uint64_t kStart = 1;    // benchmark starting points
inline constexpr std::uint64_t kBank = 2;     // sensing direction bank
inline constexpr std::uint64_t kProfile = 3;  // gradient compressibility sampling
inline constexpr std::uint64_t kRip = 4;      // empirical isometry probes
}  // namespace streams

}  // namespace zorofa
