#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "wmlab/attacks/tables.hpp"

namespace wmlab::attacks {

struct ModifyParams {
  double p_dup = 0.0;
  double p_del = 0.0;
  double p_repl = 0.0;
};

/// Each word is selected with probability p and always altered: a table
/// misspelling when one exists, otherwise a spelling-rule edit.
std::string attack_misspelling(std::string_view text, const MisspellingTable& table, double p,
                               std::uint64_t seed);

/// Each word is selected with probability p and receives one keyboard edit:
/// swap of two adjacent distinct characters, insertion of a neighbouring
/// key, deletion, or substitution by a neighbouring key.
std::string attack_typo(std::string_view text, double p, std::uint64_t seed);

/// One edit of `word` as attack_typo applies it; exposed for testing.
std::u32string typo_edit(std::u32string_view word, std::uint64_t seed);

/// Per word: duplicate, delete, replace with a lexicon word, or keep.
std::string attack_modify(std::string_view text, const ModifyParams& p,
                          std::span<const std::string> lexicon, std::uint64_t seed);

}  // namespace wmlab::attacks
