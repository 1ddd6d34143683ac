#include "wmlab/attacks/token.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wmlab/attacks/rng.hpp"
#include "wmlab/common/error.hpp"
#include "wmlab/text/tokenizer.hpp"

namespace wmlab::attacks {

std::string attack_token(std::string_view text, double p, TokenMode mode,
                         const text::Vocabulary& vocab, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("attack probability must be in [0,1]");
  text::TokenSeq seq;
  try {
    seq = text::tokenize(text, vocab);
  } catch (const UnknownSymbol& e) {
    throw AttackFailed(std::string("token attack: ") + e.what());
  }
  const std::size_t n = seq.size();
  const auto count = static_cast<std::size_t>(std::llround(p * static_cast<double>(n)));
  if (count == 0) return std::string(text);

  AttackRng rng(seed);
  // partial Fisher-Yates: the first `count` entries are the chosen positions
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < count; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
  std::vector<bool> chosen(n, false);
  for (std::size_t i = 0; i < count; ++i) chosen[order[i]] = true;

  std::vector<text::TokenId> out;
  out.reserve(n + count);
  for (std::size_t i = 0; i < n; ++i) {
    if (!chosen[i]) {
      out.push_back(seq.ids[i]);
      continue;
    }
    switch (mode) {
      case TokenMode::kReplace:
        out.push_back(static_cast<text::TokenId>(rng.below(vocab.size())));
        break;
      case TokenMode::kDelete:
        break;
      case TokenMode::kInsert:
        out.push_back(static_cast<text::TokenId>(rng.below(vocab.size())));
        out.push_back(seq.ids[i]);
        break;
    }
  }
  return text::detokenize(out, vocab);
}

}  // namespace wmlab::attacks
