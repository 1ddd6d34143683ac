#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

#include "wmlab/attacks/tables.hpp"
#include "wmlab/posttext/synonym_table.hpp"

namespace wmlab::attacks {

/// A rewriting model: either the built-in stub or an external command that
/// reads text on stdin and writes the rewrite on stdout.
struct ExternalRewriteHook {
  std::string command;  // empty: built-in stub
  std::chrono::milliseconds timeout{60'000};

  bool is_stub() const { return command.empty(); }
};

struct RewriteStubTables {
  const posttext::SynonymTable* synonyms = nullptr;
  const ContractionTable* contractions = nullptr;
  double synonym_prob = 0.3;
};

/// Deterministic stand-in for a paraphrase or round-trip translation model.
/// Per sentence, clauses separated by ", " are shuffled; then a synonym pass
/// at synonym_prob and contraction expansion run over the whole text.
/// Sentence terminators are never moved, so the sentence count is kept.
std::string rewrite_stub(std::string_view text, const RewriteStubTables& tables, std::uint64_t seed);

/// Runs the hook. External failures, timeouts and empty output throw
/// AttackFailed; the text is never passed through unattacked.
std::string attack_rewrite(std::string_view text, const ExternalRewriteHook& hook,
                           const RewriteStubTables& tables, std::uint64_t seed);

/// Number of sentence-final '.', '!' or '?' characters.
std::size_t count_sentences(std::string_view text);

}  // namespace wmlab::attacks
