#pragma once

#include "wmlab/lm/generate.hpp"

namespace wmlab::attacks {

/// Number of emoji forced after every word token.
inline constexpr std::size_t kEmojiPerWord = 2;

/// Generation-side emoji attack. Installs a forced-token hook that emits the
/// emoji token twice after each word token, bypassing the watermark sampler;
/// the emoji stay visible to the watermark hooks but not to the model.
/// Throws ConfigError when the vocabulary has no emoji token.
class EmojiAttack {
 public:
  explicit EmojiAttack(const text::Vocabulary& vocab);

  text::TokenId emoji() const { return emoji_; }

  /// Wraps `cfg`; max_tokens is scaled so the stripped output can still
  /// reach the requested length.
  void install(lm::GenerationConfig& cfg) const;

  /// Removes every emoji token and truncates to `max_tokens`.
  text::TokenSeq strip(const text::TokenSeq& seq, std::size_t max_tokens) const;

  /// Generates with the attack and returns the stripped sequence.
  text::TokenSeq generate(const lm::LanguageModel& model, lm::GenerationConfig cfg) const;

  bool is_word_token(text::TokenId id) const { return word_token_[id]; }

 private:
  text::TokenId emoji_ = 0;
  std::vector<bool> word_token_;
};

}  // namespace wmlab::attacks
