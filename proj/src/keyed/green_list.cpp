#include "wmlab/keyed/green_list.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "wmlab/common/error.hpp"

namespace wmlab::keyed {

std::size_t green_count(double gamma, std::size_t vocab_size) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must be in (0,1)");
  return static_cast<std::size_t>(std::llround(gamma * static_cast<double>(vocab_size)));
}

std::vector<TokenId> green_partition(const KeyedPrf& prf, const PrefixContext& ctx, double gamma,
                                     std::size_t vocab_size) {
  const std::size_t count = green_count(gamma, vocab_size);
  std::vector<std::uint32_t> msg;
  msg.push_back(static_cast<std::uint32_t>(ctx.window.size()));
  msg.insert(msg.end(), ctx.window.begin(), ctx.window.end());
  msg.push_back(0);
  std::vector<std::pair<std::uint64_t, TokenId>> ranked(vocab_size);
  for (std::size_t v = 0; v < vocab_size; ++v) {
    msg.back() = static_cast<std::uint32_t>(v);
    ranked[v] = {prf.hash(PrfDomain::kGreen, msg), static_cast<TokenId>(v)};
  }
  std::nth_element(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(count), ranked.end());
  std::vector<TokenId> green;
  green.reserve(count);
  for (std::size_t i = 0; i < count; ++i) green.push_back(ranked[i].second);
  std::sort(green.begin(), green.end());
  return green;
}

std::vector<TokenId> green_partition(const SecretKey& key, const PrefixContext& ctx, double gamma,
                                     std::size_t vocab_size) {
  return green_partition(KeyedPrf(key), ctx, gamma, vocab_size);
}

std::vector<bool> green_mask(const KeyedPrf& prf, const PrefixContext& ctx, double gamma,
                             std::size_t vocab_size) {
  std::vector<bool> mask(vocab_size, false);
  for (TokenId id : green_partition(prf, ctx, gamma, vocab_size)) mask[id] = true;
  return mask;
}

}  // namespace wmlab::keyed
