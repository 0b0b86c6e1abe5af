#pragma once

#include <cstdint>
#include <random>

namespace qtel {

/// Seedable random generator with deterministic derived substreams.
/// Two instances constructed from the same seed produce identical sequences.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  /// Uniform double in [0, 1).
  double uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }

  /// Standard Gaussian.
  double normal() { return normal_(engine_); }

  std::uint64_t next_u64() { return engine_(); }

  /// Independent deterministic substream; usable for partitioned sampling.
  Rng derive(std::uint64_t stream) const { return Rng(mix(seed_ ^ mix(stream))); }

  std::uint64_t seed() const { return seed_; }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace qtel
