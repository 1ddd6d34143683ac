#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "wmlab/attacks/tables.hpp"
#include "wmlab/posttext/synonym_table.hpp"

namespace wmlab::attacks {

/// Replaces expanded phrases whose words are separated by single U+0020
/// characters with their contracted form ("is not" -> "isn't"). Longer
/// phrases win; case follows the original phrase. Idempotent.
std::string attack_contraction(std::string_view text, const ContractionTable& table);

/// Replaces contracted words with the expanded phrase, joined by U+0020
/// ("don't" -> "do not"). Idempotent.
std::string attack_expansion(std::string_view text, const ContractionTable& table);

/// Simple per-codepoint lowercase mapping.
std::string attack_lowercase(std::string_view text);

/// Each word is selected with probability p; a selected word found in the
/// table is replaced by one of its candidates chosen uniformly.
std::string attack_synonym(std::string_view text, const posttext::SynonymTable& table, double p,
                           std::uint64_t seed);

}  // namespace wmlab::attacks
