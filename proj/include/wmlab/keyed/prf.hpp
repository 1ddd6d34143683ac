#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "wmlab/keyed/secret_key.hpp"
#include "wmlab/text/vocabulary.hpp"

namespace wmlab::keyed {

using text::TokenId;

/// Pads contexts shorter than the window at sequence start.
inline constexpr TokenId kSentinelToken = 0xFFFFFFFFu;

/// Domain bytes keep the different uses of one key independent.
enum class PrfDomain : std::uint8_t {
  kUniform = 'U',
  kGreen = 'G',
  kKeySequence = 'X',
  kBitMap = 'B',
  kWordBit = 'L',
};

/// Keyed PRF over short integer messages.
///
/// A 128-bit SipHash-2-4 key is derived once as BLAKE2b-128(key, label);
/// each message is hashed as domain byte || little-endian u32 words.
class KeyedPrf {
 public:
  explicit KeyedPrf(const SecretKey& key);

  std::uint64_t hash(PrfDomain domain, std::span<const std::uint32_t> words) const;
  std::uint64_t hash_bytes(PrfDomain domain, std::span<const std::uint8_t> bytes) const;
  /// Maps a hash into the open interval (0, 1).
  double unit(PrfDomain domain, std::span<const std::uint32_t> words) const {
    return to_open_unit(hash(domain, words));
  }

  static double to_open_unit(std::uint64_t h) {
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::array<std::uint8_t, 16> subkey_{};
};

/// The last H tokens before the position being generated or scored.
struct PrefixContext {
  std::vector<TokenId> window;

  /// Window over `history` (tokens produced so far), left-padded with
  /// kSentinelToken when fewer than h tokens exist.
  static PrefixContext from_history(std::span<const TokenId> history, std::size_t h);
  /// The fixed context Unigram hashes every position with.
  static PrefixContext constant(std::size_t h = 1);

  bool operator==(const PrefixContext&) const = default;
};

/// Keyed uniform for (context, index), in (0, 1).
double prefix_uniform(const KeyedPrf& prf, const PrefixContext& ctx, std::uint32_t index);
double prefix_uniform(const SecretKey& key, const PrefixContext& ctx, std::uint32_t index);

/// Fills out[i] = prefix_uniform(prf, ctx, i) for every i < out.size().
void prefix_uniforms(const KeyedPrf& prf, const PrefixContext& ctx, std::span<double> out);

}  // namespace wmlab::keyed
