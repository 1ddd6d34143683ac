#include "wmlab/keyed/prf.hpp"

#include <sodium.h>

#include <algorithm>

#include "wmlab/common/error.hpp"

namespace wmlab::keyed {
namespace {

static_assert(crypto_shorthash_siphash24_KEYBYTES == 16);
static_assert(crypto_shorthash_siphash24_BYTES == 8);

constexpr std::size_t kMaxWords = 64;

}  // namespace

KeyedPrf::KeyedPrf(const SecretKey& key) {
  if (sodium_init() < 0) throw Error("libsodium initialisation failed");
  static constexpr char kLabel[] = "wmlab/siphash-subkey/v1";
  const auto k = key.bytes();
  crypto_generichash(subkey_.data(), subkey_.size(), reinterpret_cast<const unsigned char*>(kLabel),
                     sizeof(kLabel) - 1, k.data(), k.size());
}

std::uint64_t KeyedPrf::hash(PrfDomain domain, std::span<const std::uint32_t> words) const {
  if (words.size() > kMaxWords) throw Error("PRF message too long");
  std::array<std::uint8_t, 1 + 4 * kMaxWords> buf;
  buf[0] = static_cast<std::uint8_t>(domain);
  std::size_t n = 1;
  for (std::uint32_t w : words) {
    buf[n++] = static_cast<std::uint8_t>(w);
    buf[n++] = static_cast<std::uint8_t>(w >> 8);
    buf[n++] = static_cast<std::uint8_t>(w >> 16);
    buf[n++] = static_cast<std::uint8_t>(w >> 24);
  }
  std::array<std::uint8_t, 8> out;
  crypto_shorthash_siphash24(out.data(), buf.data(), n, subkey_.data());
  std::uint64_t h = 0;
  for (int i = 7; i >= 0; --i) h = (h << 8) | out[i];
  return h;
}

std::uint64_t KeyedPrf::hash_bytes(PrfDomain domain, std::span<const std::uint8_t> bytes) const {
  std::vector<std::uint8_t> buf;
  buf.reserve(bytes.size() + 1);
  buf.push_back(static_cast<std::uint8_t>(domain));
  buf.insert(buf.end(), bytes.begin(), bytes.end());
  std::array<std::uint8_t, 8> out;
  crypto_shorthash_siphash24(out.data(), buf.data(), buf.size(), subkey_.data());
  std::uint64_t h = 0;
  for (int i = 7; i >= 0; --i) h = (h << 8) | out[i];
  return h;
}

PrefixContext PrefixContext::from_history(std::span<const TokenId> history, std::size_t h) {
  if (h == 0) throw ConfigError("prefix window must be at least 1");
  PrefixContext ctx;
  ctx.window.assign(h, kSentinelToken);
  const std::size_t take = std::min(h, history.size());
  std::copy(history.end() - static_cast<std::ptrdiff_t>(take), history.end(),
            ctx.window.end() - static_cast<std::ptrdiff_t>(take));
  return ctx;
}

PrefixContext PrefixContext::constant(std::size_t h) {
  if (h == 0) throw ConfigError("prefix window must be at least 1");
  // 0xFFFFFFFE never occurs as a real id or as the padding sentinel
  return PrefixContext{std::vector<TokenId>(h, 0xFFFFFFFEu)};
}

namespace {

std::vector<std::uint32_t> uniform_message(const PrefixContext& ctx) {
  std::vector<std::uint32_t> msg;
  msg.reserve(ctx.window.size() + 2);
  msg.push_back(static_cast<std::uint32_t>(ctx.window.size()));
  msg.insert(msg.end(), ctx.window.begin(), ctx.window.end());
  msg.push_back(0);
  return msg;
}

}  // namespace

double prefix_uniform(const KeyedPrf& prf, const PrefixContext& ctx, std::uint32_t index) {
  auto msg = uniform_message(ctx);
  msg.back() = index;
  return prf.unit(PrfDomain::kUniform, msg);
}

double prefix_uniform(const SecretKey& key, const PrefixContext& ctx, std::uint32_t index) {
  return prefix_uniform(KeyedPrf(key), ctx, index);
}

void prefix_uniforms(const KeyedPrf& prf, const PrefixContext& ctx, std::span<double> out) {
  auto msg = uniform_message(ctx);
  for (std::size_t i = 0; i < out.size(); ++i) {
    msg.back() = static_cast<std::uint32_t>(i);
    out[i] = prf.unit(PrfDomain::kUniform, msg);
  }
}

}  // namespace wmlab::keyed
