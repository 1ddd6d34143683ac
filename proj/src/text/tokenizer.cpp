#include "wmlab/text/tokenizer.hpp"

#include "wmlab/common/error.hpp"
#include "wmlab/text/unicode.hpp"

namespace wmlab::text {

TokenSeq tokenize(std::string_view text, const Vocabulary& vocab) {
  TokenSeq seq;
  seq.vocab_fingerprint = vocab.fingerprint();
  std::size_t pos = 0;
  while (pos < text.size()) {
    TokenId id = 0;
    const std::size_t len = vocab.longest_match(text, pos, id);
    if (len == 0) {
      // report the offending character, not a raw byte
      std::size_t end = pos + 1;
      while (end < text.size() && (static_cast<unsigned char>(text[end]) & 0xC0) == 0x80) ++end;
      throw UnknownSymbol("no vocabulary entry for character '" +
                          std::string(text.substr(pos, end - pos)) + "' at byte " +
                          std::to_string(pos));
    }
    seq.ids.push_back(id);
    pos += len;
  }
  return seq;
}

TokenSeq tokenize_lenient(std::string_view text, const Vocabulary& vocab, std::size_t* skipped) {
  TokenSeq seq;
  seq.vocab_fingerprint = vocab.fingerprint();
  std::size_t dropped = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    TokenId id = 0;
    const std::size_t len = vocab.longest_match(text, pos, id);
    if (len > 0) {
      seq.ids.push_back(id);
      pos += len;
      continue;
    }
    ++dropped;
    ++pos;
    while (pos < text.size() && (static_cast<unsigned char>(text[pos]) & 0xC0) == 0x80) ++pos;
  }
  if (skipped) *skipped = dropped;
  return seq;
}

std::string detokenize(std::span<const TokenId> ids, const Vocabulary& vocab) {
  std::string out;
  for (TokenId id : ids) out += vocab.render(id);
  return out;
}

}  // namespace wmlab::text
