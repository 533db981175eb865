#pragma once

#include <cstdint>
#include <random>

namespace raed {

// Deterministic RNG. Distribution helpers live here instead of <random>'s
// distribution classes because those are implementation-defined; this keeps
// generated instances and benchmark CSVs bit-stable across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased draw from [lo, hi], endpoints included.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Uniform double in [0, 1).
  double uniform01();

  // Exact Poisson sample (product-of-uniforms method). Cost grows with the
  // mean; fine for the arrival rates used here.
  int poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

// Order-sensitive seed combination (splitmix64 finalizer). Used to derive
// per-cell, per-realization seeds from a base seed and axis coordinates.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace raed
