#include "mprs/generators/rng.hpp"

#include <limits>

namespace mprs {

std::uint64_t Rng::below(std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  for (;;) {
    const std::uint64_t v = engine_();
    if (v < limit) return v % n;
  }
}

}  // namespace mprs
