#include "wmlab/attacks/noise.hpp"

#include <algorithm>
#include <array>

#include "wmlab/attacks/rng.hpp"
#include "wmlab/common/error.hpp"
#include "wmlab/posttext/synonym_table.hpp"
#include "wmlab/text/segment.hpp"
#include "wmlab/text/unicode.hpp"

namespace wmlab::attacks {
namespace {

void check_prob(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("attack probability must be in [0,1]");
}

// QWERTY neighbours, lowercase letters and digits.
std::u32string_view neighbours(char32_t c) {
  static const std::array<std::u32string_view, 26> letters = {
      U"qwsz", U"vghn", U"xdfv", U"serfcx", U"wsdr", U"drtgvc", U"ftyhbv", U"gyujnb", U"ujko",
      U"huikmn", U"jiolm", U"kop", U"njk", U"bhjm", U"iklp", U"ol", U"wa", U"edft", U"awedxz",
      U"rfgy", U"yhji", U"cfgb", U"qase", U"zsdc", U"tghu", U"asx"};
  static const std::array<std::u32string_view, 10> digits = {
      U"9", U"2", U"13", U"24", U"35", U"46", U"57", U"68", U"79", U"80"};
  const char32_t lower = text::to_lower(c);
  if (lower >= U'a' && lower <= U'z') return letters[lower - U'a'];
  if (c >= U'0' && c <= U'9') return digits[c - U'0'];
  return {};
}

char32_t neighbour_of(char32_t c, AttackRng& rng) {
  const auto n = neighbours(c);
  if (n.empty()) return c;  // no keyboard position: repeat the character
  const char32_t pick = n[rng.below(n.size())];
  return text::is_upper(c) ? text::to_upper(pick) : pick;
}

std::u32string misspell_by_rule(std::u32string_view word, AttackRng& rng) {
  std::u32string w(word);
  const auto lower = text::to_lower(word);
  // a doubled letter loses one copy
  for (std::size_t i = 0; i + 1 < lower.size(); ++i) {
    if (lower[i] == lower[i + 1] && text::is_word_char(lower[i])) {
      w.erase(i, 1);
      return w;
    }
  }
  // ie/ei confusion
  for (std::size_t i = 0; i + 1 < lower.size(); ++i) {
    if ((lower[i] == U'i' && lower[i + 1] == U'e') || (lower[i] == U'e' && lower[i + 1] == U'i')) {
      std::swap(w[i], w[i + 1]);
      return w;
    }
  }
  // otherwise double a letter
  const std::size_t at = rng.below(w.size());
  w.insert(at, 1, w[at]);
  return w;
}

}  // namespace

std::string attack_misspelling(std::string_view text, const MisspellingTable& table, double p,
                               std::uint64_t seed) {
  check_prob(p);
  if (p == 0.0) return std::string(text);
  AttackRng rng(seed);
  const text::SegmentedText seg(text);
  std::string out;
  out.reserve(text.size() + 16);
  for (const auto& s : seg.spans) {
    const auto view = seg.view(s);
    if (s.kind != text::SpanKind::kWord || !rng.bernoulli(p)) {
      out += text::encode_utf8(view);
      continue;
    }
    const std::string word = text::encode_utf8(view);
    if (const auto* wrong = table.find(fold_word(word)); wrong && !wrong->empty()) {
      out += posttext::match_case(word, (*wrong)[rng.below(wrong->size())]);
    } else {
      out += text::encode_utf8(misspell_by_rule(view, rng));
    }
  }
  return out;
}

namespace {

std::u32string typo_edit(std::u32string_view word, AttackRng& rng) {
  std::u32string w(word);
  if (w.empty()) return w;
  enum Kind { kSwap, kInsert, kDrop, kSubstitute };
  auto kind = static_cast<Kind>(rng.below(4));
  if (kind == kDrop && w.size() < 2) kind = kSubstitute;
  if (kind == kSwap) {
    std::vector<std::size_t> sites;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] != w[i + 1]) sites.push_back(i);
    }
    if (sites.empty()) {
      kind = kSubstitute;
    } else {
      const std::size_t i = sites[rng.below(sites.size())];
      std::swap(w[i], w[i + 1]);
      return w;
    }
  }
  const std::size_t at = rng.below(w.size());
  switch (kind) {
    case kInsert:
      w.insert(at + 1, 1, neighbour_of(w[at], rng));
      break;
    case kDrop:
      w.erase(at, 1);
      break;
    default: {
      const char32_t repl = neighbour_of(w[at], rng);
      if (repl == w[at]) {
        w.insert(at, 1, repl);  // no neighbour: a doubled key press
      } else {
        w[at] = repl;
      }
      break;
    }
  }
  return w;
}

}  // namespace

std::u32string typo_edit(std::u32string_view word, std::uint64_t seed) {
  AttackRng rng(seed);
  return typo_edit(word, rng);
}

std::string attack_typo(std::string_view text, double p, std::uint64_t seed) {
  check_prob(p);
  if (p == 0.0) return std::string(text);
  AttackRng rng(seed);
  const text::SegmentedText seg(text);
  std::string out;
  out.reserve(text.size() + 16);
  for (const auto& s : seg.spans) {
    const auto view = seg.view(s);
    if (s.kind == text::SpanKind::kWord && rng.bernoulli(p)) {
      out += text::encode_utf8(typo_edit(view, rng));
    } else {
      out += text::encode_utf8(view);
    }
  }
  return out;
}

std::string attack_modify(std::string_view text, const ModifyParams& p,
                          std::span<const std::string> lexicon, std::uint64_t seed) {
  check_prob(p.p_dup);
  check_prob(p.p_del);
  check_prob(p.p_repl);
  if (p.p_dup + p.p_del + p.p_repl > 1.0 + 1e-12) {
    throw ConfigError("modify probabilities sum above 1");
  }
  if (p.p_dup == 0.0 && p.p_del == 0.0 && p.p_repl == 0.0) return std::string(text);
  if (p.p_repl > 0.0 && lexicon.empty()) throw ConfigError("modify attack needs a lexicon");

  AttackRng rng(seed);
  const text::SegmentedText seg(text);
  const auto& spans = seg.spans;
  std::vector<std::u32string> pieces;
  std::vector<bool> removed(spans.size(), false);
  pieces.reserve(spans.size());
  for (std::size_t k = 0; k < spans.size(); ++k) {
    std::u32string piece(seg.view(spans[k]));
    if (spans[k].kind == text::SpanKind::kWord) {
      const double u = rng.unit();
      if (u < p.p_dup) {
        piece = piece + U" " + piece;
      } else if (u < p.p_dup + p.p_del) {
        removed[k] = true;
      } else if (u < p.p_dup + p.p_del + p.p_repl) {
        const std::string& repl = lexicon[rng.below(lexicon.size())];
        piece = text::decode_utf8(posttext::match_case(text::encode_utf8(piece), repl));
      }
    }
    pieces.push_back(std::move(piece));
  }
  // a deleted word takes one neighbouring whitespace run with it
  for (std::size_t k = 0; k < spans.size(); ++k) {
    if (!removed[k]) continue;
    pieces[k].clear();
    if (k + 1 < spans.size() && spans[k + 1].kind == text::SpanKind::kWhitespace &&
        !pieces[k + 1].empty()) {
      pieces[k + 1].clear();
    } else if (k > 0 && spans[k - 1].kind == text::SpanKind::kWhitespace) {
      pieces[k - 1].clear();
    }
  }
  std::u32string out;
  for (const auto& piece : pieces) out += piece;
  return text::encode_utf8(out);
}

}  // namespace wmlab::attacks
