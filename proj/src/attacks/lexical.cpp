#include "wmlab/attacks/lexical.hpp"

#include "wmlab/attacks/rng.hpp"
#include "wmlab/common/error.hpp"
#include "wmlab/text/segment.hpp"
#include "wmlab/text/unicode.hpp"

namespace wmlab::attacks {
namespace {

void check_prob(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("attack probability must be in [0,1]");
}

}  // namespace

std::string attack_contraction(std::string_view text, const ContractionTable& table) {
  if (table.empty()) return std::string(text);
  const text::SegmentedText seg(text);
  const auto& spans = seg.spans;
  std::string out;
  out.reserve(text.size());
  std::size_t k = 0;
  while (k < spans.size()) {
    const ContractionTable::Row* match = nullptr;
    if (spans[k].kind == text::SpanKind::kWord) {
      for (const auto& row : table.rows()) {
        const std::size_t words = row.expanded_words.size();
        if (match && words <= match->expanded_words.size()) continue;
        if (k + 2 * (words - 1) >= spans.size()) continue;
        bool ok = true;
        for (std::size_t w = 0; ok && w < words; ++w) {
          const auto& s = spans[k + 2 * w];
          ok = s.kind == text::SpanKind::kWord &&
               fold_word(text::encode_utf8(seg.view(s))) == row.expanded_words[w];
          if (ok && w + 1 < words) ok = seg.view(spans[k + 2 * w + 1]) == U" ";
        }
        if (ok) match = &row;
      }
    }
    if (match == nullptr) {
      out += text::encode_utf8(seg.view(spans[k]));
      ++k;
      continue;
    }
    const std::size_t consumed = 2 * match->expanded_words.size() - 1;
    const auto& last = spans[k + consumed - 1];
    const std::string original =
        text::encode_utf8(std::u32string_view(seg.text).substr(spans[k].start, last.end - spans[k].start));
    out += posttext::match_case(original, match->contracted);
    k += consumed;
  }
  return out;
}

std::string attack_expansion(std::string_view text, const ContractionTable& table) {
  if (table.empty()) return std::string(text);
  const text::SegmentedText seg(text);
  std::string out;
  out.reserve(text.size() + text.size() / 8);
  for (const auto& s : seg.spans) {
    const std::string word = text::encode_utf8(seg.view(s));
    const ContractionTable::Row* row =
        s.kind == text::SpanKind::kWord ? table.by_contracted(fold_word(word)) : nullptr;
    out += row ? posttext::match_case(word, row->expanded) : word;
  }
  return out;
}

std::string attack_lowercase(std::string_view text) { return text::to_lower_utf8(text); }

std::string attack_synonym(std::string_view text, const posttext::SynonymTable& table, double p,
                           std::uint64_t seed) {
  check_prob(p);
  if (p == 0.0 || table.empty()) return std::string(text);
  AttackRng rng(seed);
  const text::SegmentedText seg(text);
  std::string out;
  out.reserve(text.size());
  for (const auto& s : seg.spans) {
    const std::string word = text::encode_utf8(seg.view(s));
    if (s.kind != text::SpanKind::kWord || !rng.bernoulli(p)) {
      out += word;
      continue;
    }
    const auto* cands = table.find(text::to_lower_utf8(word));
    if (cands == nullptr || cands->empty()) {
      out += word;
      continue;
    }
    out += posttext::match_case(word, (*cands)[rng.below(cands->size())].word);
  }
  return out;
}

}  // namespace wmlab::attacks
