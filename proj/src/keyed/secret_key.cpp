#include "wmlab/keyed/secret_key.hpp"

#include <sodium.h>

#include "wmlab/common/error.hpp"

namespace wmlab::keyed {
namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

SecretKey SecretKey::from_hex(std::string_view hex) {
  if (hex.size() != 2 * kBytes) {
    throw ConfigError("secret key must be 64 hex characters, got " + std::to_string(hex.size()));
  }
  std::array<std::uint8_t, kBytes> bytes{};
  for (std::size_t i = 0; i < kBytes; ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    // the key itself is never echoed back
    if (hi < 0 || lo < 0) throw ConfigError("secret key contains a non-hex character");
    bytes[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return SecretKey(bytes);
}

SecretKey SecretKey::from_seed(std::uint64_t seed) {
  if (sodium_init() < 0) throw Error("libsodium initialisation failed");
  std::array<std::uint8_t, 8> msg{};
  for (int i = 0; i < 8; ++i) msg[i] = static_cast<std::uint8_t>(seed >> (8 * i));
  static constexpr char kLabel[] = "wmlab/key-from-seed/v1";
  std::array<std::uint8_t, kBytes> bytes{};
  crypto_generichash(bytes.data(), bytes.size(), msg.data(), msg.size(),
                     reinterpret_cast<const unsigned char*>(kLabel), sizeof(kLabel) - 1);
  return SecretKey(bytes);
}

}  // namespace wmlab::keyed
