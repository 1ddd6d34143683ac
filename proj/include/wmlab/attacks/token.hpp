#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "wmlab/text/vocabulary.hpp"

namespace wmlab::attacks {

enum class TokenMode { kReplace, kDelete, kInsert };

/// Tokenizes, picks round(p * L) distinct positions and applies `mode` at
/// each: replace with a uniformly drawn vocabulary token, delete, or insert
/// a uniformly drawn token before it. Throws AttackFailed when the text
/// cannot be tokenized.
std::string attack_token(std::string_view text, double p, TokenMode mode,
                         const text::Vocabulary& vocab, std::uint64_t seed);

}  // namespace wmlab::attacks
