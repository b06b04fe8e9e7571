#pragma once

#include <cstdint>
#include <random>

namespace mprs {

// The project's only random source: std::mt19937_64 (its output sequence is
// fixed by the standard) with uniform reals built from the top 53 bits, so
// the same seed gives bit-identical instances on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0,1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n) by rejection; n > 0.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace mprs
