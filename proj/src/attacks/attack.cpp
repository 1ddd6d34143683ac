#include "wmlab/attacks/attack.hpp"

#include <cstdio>

#include "wmlab/attacks/lexical.hpp"
#include "wmlab/common/error.hpp"

namespace wmlab::attacks {
namespace {

constexpr std::array<std::string_view, 12> kNames = {
    "contraction", "expansion",   "lowercase", "misspelling", "typo",  "modify",
    "synonym",     "paraphrase",  "translation", "token",     "emoji", "distill"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

template <typename T>
const T& need(const std::shared_ptr<const T>& ptr, std::string_view what) {
  if (!ptr) throw ConfigError("attack needs the " + std::string(what));
  return *ptr;
}

}  // namespace

std::string_view attack_name(AttackId id) { return kNames[static_cast<std::size_t>(id)]; }

AttackId attack_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<AttackId>(i);
  }
  throw ConfigError("unknown attack '" + std::string(name) + "'");
}

bool is_pretext_attack(AttackId id) { return id == AttackId::kEmoji || id == AttackId::kDistill; }

bool attack_applicable(AttackId attack, std::string_view scheme) {
  switch (attack) {
    case AttackId::kEmoji:
      return scheme == "kgw" || scheme == "unigram" || scheme == "inverse" || scheme == "exponential";
    case AttackId::kDistill:
      return scheme == "kgw" || scheme == "inverse" || scheme == "exponential";
    default:
      return true;
  }
}

std::string AttackSpec::label() const {
  const std::string name(attack_name(id));
  switch (id) {
    case AttackId::kMisspelling:
    case AttackId::kTypo:
    case AttackId::kSynonym:
      return name + "(p=" + fmt(p) + ")";
    case AttackId::kModify:
      return name + "(" + fmt(modify.p_dup) + "," + fmt(modify.p_del) + "," + fmt(modify.p_repl) + ")";
    case AttackId::kToken: {
      const char* mode = token_mode == TokenMode::kReplace  ? "replace"
                         : token_mode == TokenMode::kDelete ? "delete"
                                                            : "insert";
      return name + "(" + mode + ",p=" + fmt(p) + ")";
    }
    case AttackId::kDistill:
      return name + (distill_mode == DistillMode::kLogitMatch ? "(logit-match)" : "(sample-finetune)");
    default:
      return name;
  }
}

void AttackSpec::validate() const {
  auto check = [](double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(what) + " must be in [0,1]");
  };
  check(p, "attack probability");
  check(modify.p_dup, "p_dup");
  check(modify.p_del, "p_del");
  check(modify.p_repl, "p_repl");
  if (modify.p_dup + modify.p_del + modify.p_repl > 1.0 + 1e-12) {
    throw ConfigError("modify probabilities sum above 1");
  }
}

std::string apply_text_attack(std::string_view text, const AttackSpec& spec,
                              const AttackResources& res) {
  spec.validate();
  switch (spec.id) {
    case AttackId::kContraction:
      return attack_contraction(text, need(res.contractions, "contraction table"));
    case AttackId::kExpansion:
      return attack_expansion(text, need(res.contractions, "contraction table"));
    case AttackId::kLowercase:
      return attack_lowercase(text);
    case AttackId::kMisspelling:
      return attack_misspelling(text, need(res.misspellings, "misspelling table"), spec.p, spec.seed);
    case AttackId::kTypo:
      return attack_typo(text, spec.p, spec.seed);
    case AttackId::kModify:
      return attack_modify(text, spec.modify, res.lexicon, spec.seed);
    case AttackId::kSynonym:
      return attack_synonym(text, need(res.synonyms, "synonym table"), spec.p, spec.seed);
    case AttackId::kParaphrase:
    case AttackId::kTranslation: {
      RewriteStubTables tables{res.synonyms.get(), res.contractions.get(), res.rewrite_synonym_prob};
      return attack_rewrite(text, spec.hook, tables, spec.seed);
    }
    case AttackId::kToken:
      return attack_token(text, spec.p, spec.token_mode, need(res.vocab, "vocabulary"), spec.seed);
    case AttackId::kEmoji:
    case AttackId::kDistill:
      break;
  }
  throw Unsupported(std::string(attack_name(spec.id)) + " is applied during generation, not to text");
}

}  // namespace wmlab::attacks
