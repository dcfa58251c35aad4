#pragma once

#include <cstdint>

namespace coverlab {

// Counter-based randomness: every consumer derives an independent stream
// from (seed, stream index) via the splitmix64 finalizer, so results do not
// depend on thread count or evaluation order.  Stream i of seed s starts at
// state fin(fin(s) ^ fin(i + GOLDEN)) and then walks the usual splitmix64
// sequence.
class Rng {
 public:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  explicit Rng(std::uint64_t seed) : state_(mix(seed)) {}
  Rng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(mix(seed) ^ mix(stream + kGolden))) {}

  std::uint64_t next() {
    state_ += kGolden;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by 128-bit multiply; bound 0 means the full range.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) return next();
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace coverlab
