#pragma once

#include <cstdint>
#include <random>

#include "wmlab/common/seed.hpp"

namespace wmlab::attacks {

/// Seeded draws with a fixed mapping from the 64-bit stream, so outputs do
/// not depend on the standard library's distribution implementations.
class AttackRng {
 public:
  explicit AttackRng(std::uint64_t seed) : engine_(seed) {}

  double unit() { return unit_from_bits(engine_()); }
  bool bernoulli(double p) { return unit() < p; }
  /// Uniform index in [0, n); n must be positive.
  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(unit() * static_cast<double>(n));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wmlab::attacks
