#include "wmlab/attacks/emoji.hpp"

#include "wmlab/common/error.hpp"
#include "wmlab/text/unicode.hpp"

namespace wmlab::attacks {

EmojiAttack::EmojiAttack(const text::Vocabulary& vocab) : word_token_(vocab.size(), false) {
  const auto id = vocab.lookup(text::encode_utf8(std::u32string(1, text::kEmojiCodepoint)));
  if (!id) throw ConfigError("vocabulary has no emoji token");
  emoji_ = *id;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    for (char32_t c : text::decode_utf8(vocab.render(static_cast<text::TokenId>(i)))) {
      if (text::is_word_char(c)) {
        word_token_[i] = true;
        break;
      }
    }
  }
}

void EmojiAttack::install(lm::GenerationConfig& cfg) const {
  cfg.max_tokens *= 1 + kEmojiPerWord;
  cfg.forced_token = [this](std::span<const text::TokenId> generated) -> std::optional<text::TokenId> {
    std::size_t trailing = 0;
    while (trailing < generated.size() && generated[generated.size() - 1 - trailing] == emoji_) {
      ++trailing;
    }
    if (trailing == generated.size() || trailing >= kEmojiPerWord) return std::nullopt;
    if (!word_token_[generated[generated.size() - 1 - trailing]]) return std::nullopt;
    return emoji_;
  };
  const text::TokenId emoji = emoji_;
  cfg.hidden_from_model = [emoji](text::TokenId id) { return id == emoji; };
}

text::TokenSeq EmojiAttack::strip(const text::TokenSeq& seq, std::size_t max_tokens) const {
  text::TokenSeq out;
  out.vocab_fingerprint = seq.vocab_fingerprint;
  for (text::TokenId id : seq.ids) {
    if (out.ids.size() == max_tokens) break;
    if (id != emoji_) out.ids.push_back(id);
  }
  return out;
}

text::TokenSeq EmojiAttack::generate(const lm::LanguageModel& model, lm::GenerationConfig cfg) const {
  const std::size_t wanted = cfg.max_tokens;
  install(cfg);
  return strip(lm::generate(model, cfg), wanted);
}

}  // namespace wmlab::attacks
