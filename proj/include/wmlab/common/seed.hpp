#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace wmlab {

/// Derives an independent stream seed from a master seed and a path of
/// labels, e.g. derive_seed(master, {"p017", "attack", "typo"}).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::string_view> labels);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
inline double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace wmlab
