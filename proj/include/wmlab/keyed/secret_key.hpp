#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace wmlab::keyed {

/// 256-bit watermark key. Deliberately has no formatting or streaming
/// support so it cannot end up in logs or reports.
class SecretKey {
 public:
  static constexpr std::size_t kBytes = 32;

  explicit SecretKey(const std::array<std::uint8_t, kBytes>& bytes) : bytes_(bytes) {}

  /// Exactly 64 hex characters; throws ConfigError otherwise.
  static SecretKey from_hex(std::string_view hex);
  /// Expands a 64-bit seed into a key. For tests and derived sub-keys.
  static SecretKey from_seed(std::uint64_t seed);

  std::span<const std::uint8_t, kBytes> bytes() const { return bytes_; }

  bool operator==(const SecretKey&) const = default;

 private:
  std::array<std::uint8_t, kBytes> bytes_;
};

}  // namespace wmlab::keyed
