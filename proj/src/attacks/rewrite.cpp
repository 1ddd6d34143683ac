#include "wmlab/attacks/rewrite.hpp"

#include "wmlab/attacks/lexical.hpp"
#include "wmlab/attacks/rng.hpp"
#include "wmlab/common/error.hpp"
#include "wmlab/common/seed.hpp"
#include "wmlab/common/subprocess.hpp"
#include "wmlab/text/unicode.hpp"

namespace wmlab::attacks {
namespace {

bool is_terminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?'; }

std::u32string shuffle_clauses(std::u32string_view body, AttackRng& rng) {
  std::vector<std::u32string> clauses;
  std::size_t start = 0;
  for (std::size_t i = 0; i + 1 < body.size(); ++i) {
    if (body[i] == U',' && body[i + 1] == U' ') {
      clauses.emplace_back(body.substr(start, i - start));
      start = i + 2;
      ++i;
    }
  }
  clauses.emplace_back(body.substr(start));
  if (clauses.size() < 2) return std::u32string(body);
  std::vector<std::size_t> order(clauses.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  if (order.front() != 0) {
    // the old opening clause moves inward, the new one opens the sentence
    auto& old_first = clauses[0];
    const bool pronoun_i = old_first.size() >= 2 && old_first[0] == U'I' && !text::is_word_char(old_first[1]);
    if (!old_first.empty() && !pronoun_i) old_first[0] = text::to_lower(old_first[0]);
    auto& new_first = clauses[order.front()];
    if (!new_first.empty()) new_first[0] = text::to_upper(new_first[0]);
  }
  std::u32string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) out += U", ";
    out += clauses[order[i]];
  }
  return out;
}

}  // namespace

std::size_t count_sentences(std::string_view text) {
  std::size_t n = 0;
  for (char32_t c : text::decode_utf8(text)) n += is_terminator(c) ? 1 : 0;
  return n;
}

std::string rewrite_stub(std::string_view text, const RewriteStubTables& tables, std::uint64_t seed) {
  AttackRng rng(derive_seed(seed, {"clauses"}));
  const auto cps = text::decode_utf8(text);
  std::u32string reordered;
  reordered.reserve(cps.size());
  std::size_t start = 0;
  for (std::size_t i = 0; i <= cps.size(); ++i) {
    if (i < cps.size() && !is_terminator(cps[i])) continue;
    // leading whitespace stays in front of the sentence
    std::size_t body = start;
    while (body < i && text::is_whitespace(cps[body])) ++body;
    reordered.append(cps, start, body - start);
    reordered += shuffle_clauses(std::u32string_view(cps).substr(body, i - body), rng);
    if (i < cps.size()) reordered.push_back(cps[i]);
    start = i + 1;
  }
  std::string out = text::encode_utf8(reordered);
  if (tables.synonyms) {
    out = attack_synonym(out, *tables.synonyms, tables.synonym_prob, derive_seed(seed, {"synonyms"}));
  }
  if (tables.contractions) out = attack_expansion(out, *tables.contractions);
  return out;
}

std::string attack_rewrite(std::string_view text, const ExternalRewriteHook& hook,
                           const RewriteStubTables& tables, std::uint64_t seed) {
  std::string out;
  if (hook.is_stub()) {
    out = rewrite_stub(text, tables, seed);
  } else {
    const auto result = run_command(hook.command, text, hook.timeout);
    if (result.timed_out) throw AttackFailed("rewrite hook timed out");
    if (!result.ok()) {
      throw AttackFailed("rewrite hook exited with status " + std::to_string(result.exit_code));
    }
    out = result.out;
    if (!out.empty() && out.back() == '\n') out.pop_back();
    try {
      text::decode_utf8(out);
    } catch (const Error&) {
      throw AttackFailed("rewrite hook produced invalid UTF-8");
    }
  }
  if (out.empty() && !text.empty()) throw AttackFailed("rewrite produced empty text");
  return out;
}

}  // namespace wmlab::attacks
