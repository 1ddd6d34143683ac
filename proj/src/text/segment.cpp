#include "wmlab/text/segment.hpp"

#include <algorithm>

#include "wmlab/text/unicode.hpp"

namespace wmlab::text {

std::vector<WordSpan> segment_words(std::u32string_view text) {
  std::vector<WordSpan> spans;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const char32_t c = text[i];
    std::size_t j = i + 1;
    if (is_whitespace(c)) {
      while (j < n && is_whitespace(text[j])) ++j;
      spans.push_back({i, j, SpanKind::kWhitespace});
    } else if (is_word_char(c)) {
      while (j < n) {
        if (is_word_char(text[j])) {
          ++j;
        } else if (is_apostrophe(text[j]) && j + 1 < n && is_word_char(text[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      spans.push_back({i, j, SpanKind::kWord});
    } else {
      spans.push_back({i, j, SpanKind::kPunctuation});
    }
    i = j;
  }
  return spans;
}

std::vector<WordSpan> segment_words(std::string_view utf8) {
  return segment_words(std::u32string_view(decode_utf8(utf8)));
}

SegmentedText::SegmentedText(std::string_view utf8)
    : text(decode_utf8(utf8)), spans(segment_words(std::u32string_view(text))) {}

std::size_t SegmentedText::word_count() const {
  return static_cast<std::size_t>(std::count_if(
      spans.begin(), spans.end(), [](const WordSpan& s) { return s.kind == SpanKind::kWord; }));
}

}  // namespace wmlab::text
