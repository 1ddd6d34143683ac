#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace wmlab::text {

enum class SpanKind { kWord, kWhitespace, kPunctuation };

/// Half-open [start, end) range of codepoint offsets.
struct WordSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  SpanKind kind = SpanKind::kWord;

  std::size_t length() const { return end - start; }
  bool operator==(const WordSpan&) const = default;
};

/// Splits text into spans that tile it exactly. Words are runs of letters
/// and digits, with an apostrophe kept inside a word when it sits between
/// two word characters ("don't"). Whitespace runs form one span; every
/// other codepoint is its own punctuation span.
std::vector<WordSpan> segment_words(std::u32string_view text);
std::vector<WordSpan> segment_words(std::string_view utf8);

/// A decoded text with its segmentation, the working form of every
/// word-level transform.
struct SegmentedText {
  std::u32string text;
  std::vector<WordSpan> spans;

  explicit SegmentedText(std::string_view utf8);
  std::u32string_view view(const WordSpan& s) const {
    return std::u32string_view(text).substr(s.start, s.length());
  }
  std::size_t word_count() const;
};

}  // namespace wmlab::text
