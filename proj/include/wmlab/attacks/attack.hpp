#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wmlab/attacks/distill.hpp"
#include "wmlab/attacks/noise.hpp"
#include "wmlab/attacks/rewrite.hpp"
#include "wmlab/attacks/tables.hpp"
#include "wmlab/attacks/token.hpp"
#include "wmlab/posttext/synonym_table.hpp"
#include "wmlab/text/vocabulary.hpp"

namespace wmlab::attacks {

enum class AttackId {
  kContraction,
  kExpansion,
  kLowercase,
  kMisspelling,
  kTypo,
  kModify,
  kSynonym,
  kParaphrase,
  kTranslation,
  kToken,
  kEmoji,
  kDistill,
};

inline constexpr std::array<AttackId, 12> kAllAttacks = {
    AttackId::kContraction, AttackId::kExpansion,   AttackId::kLowercase, AttackId::kMisspelling,
    AttackId::kTypo,        AttackId::kModify,      AttackId::kSynonym,   AttackId::kParaphrase,
    AttackId::kTranslation, AttackId::kToken,       AttackId::kEmoji,     AttackId::kDistill};

std::string_view attack_name(AttackId id);
/// Throws ConfigError for an unknown name.
AttackId attack_from_name(std::string_view name);

/// Emoji and Distill act on generation rather than on finished text.
bool is_pretext_attack(AttackId id);

/// Which attacks apply to which schemes. Every text attack applies to all
/// schemes; Emoji only to kgw, unigram, inverse and exponential; Distill
/// only to kgw, inverse and exponential.
bool attack_applicable(AttackId attack, std::string_view scheme);

struct AttackSpec {
  AttackId id = AttackId::kLowercase;
  double p = 0.0;                     // misspelling, typo, synonym, token
  ModifyParams modify;                // modify
  TokenMode token_mode = TokenMode::kReplace;
  ExternalRewriteHook hook;           // paraphrase, translation
  DistillMode distill_mode = DistillMode::kLogitMatch;
  std::uint64_t seed = 0;

  /// Short stable label, e.g. "typo(p=0.05)" or "modify(0.05,0.05,0)".
  std::string label() const;
  /// Throws ConfigError for out-of-range strengths.
  void validate() const;
};

/// Tables and vocabularies the text attacks draw on.
struct AttackResources {
  std::shared_ptr<const ContractionTable> contractions;
  std::shared_ptr<const MisspellingTable> misspellings;
  std::shared_ptr<const posttext::SynonymTable> synonyms;
  std::shared_ptr<const text::Vocabulary> vocab;
  std::vector<std::string> lexicon;  // modify replacements
  double rewrite_synonym_prob = 0.3;
};

/// Applies a text attack. Pre-text attacks throw Unsupported here; they are
/// applied during generation by the harness.
std::string apply_text_attack(std::string_view text, const AttackSpec& spec,
                              const AttackResources& res);

}  // namespace wmlab::attacks
