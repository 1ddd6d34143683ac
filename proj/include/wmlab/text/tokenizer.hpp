#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wmlab/text/vocabulary.hpp"

namespace wmlab::text {

/// Token ids plus the fingerprint of the vocabulary that produced them.
struct TokenSeq {
  std::vector<TokenId> ids;
  std::uint64_t vocab_fingerprint = 0;

  std::size_t size() const { return ids.size(); }
  bool empty() const { return ids.empty(); }
  bool operator==(const TokenSeq&) const = default;
};

/// Greedy longest match over the vocabulary. Single-character entries act
/// as the fallback; a character with no entry throws UnknownSymbol.
TokenSeq tokenize(std::string_view text, const Vocabulary& vocab);

/// Same as tokenize(), except characters with no vocabulary entry are
/// skipped and counted in `skipped`. Used on attacked text before scoring.
TokenSeq tokenize_lenient(std::string_view text, const Vocabulary& vocab,
                          std::size_t* skipped = nullptr);

std::string detokenize(std::span<const TokenId> ids, const Vocabulary& vocab);
inline std::string detokenize(const TokenSeq& seq, const Vocabulary& vocab) {
  return detokenize(seq.ids, vocab);
}

}  // namespace wmlab::text
