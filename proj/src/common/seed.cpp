#include "wmlab/common/seed.hpp"

namespace wmlab {
namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::string_view> labels) {
  std::uint64_t h = mix(master);
  for (std::string_view label : labels) {
    std::uint64_t fnv = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
      fnv ^= c;
      fnv *= 0x100000001b3ULL;
    }
    // length is folded in so ("ab","c") and ("a","bc") differ
    h = mix(h ^ fnv ^ (static_cast<std::uint64_t>(label.size()) << 56));
  }
  return h;
}

}  // namespace wmlab
