#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace fivepoint {

// Seeded random source used everywhere randomness is needed.
//
// Engine: std::mt19937_64 (whose output sequence is fixed by the standard).
// The distributions below are implemented here rather than with
// <random>'s distribution classes, whose outputs differ between standard
// libraries, so a seed reproduces the same stream on every platform.
// Child streams are derived with SplitMix64.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed), seed_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform01();

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  // Uniform integer in [0, n), n > 0, without modulo bias.
  size_t UniformIndex(size_t n);

  // Standard normal (Marsaglia polar method).
  double Normal();

  // Independent stream for a sub-task, e.g. a trial index.
  Rng Split(uint64_t stream) const { return Rng(DeriveSeed(seed_, stream)); }

  static uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

 private:
  std::mt19937_64 engine_;
  uint64_t seed_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fivepoint
