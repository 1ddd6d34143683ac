#pragma once

#include <string>
#include <string_view>

namespace wmlab::text {

/// Strict UTF-8 decoding; throws wmlab::Error on malformed input.
std::u32string decode_utf8(std::string_view utf8);
std::string encode_utf8(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);

/// Unicode White_Space property.
bool is_whitespace(char32_t cp);
/// Letters and digits (the characters a word is made of).
bool is_word_char(char32_t cp);
bool is_apostrophe(char32_t cp);
bool is_upper(char32_t cp);

/// Simple (1:1) case mappings for Latin, Greek and Cyrillic; other
/// codepoints map to themselves.
char32_t to_lower(char32_t cp);
char32_t to_upper(char32_t cp);
std::u32string to_lower(std::u32string_view s);
std::string to_lower_utf8(std::string_view s);

}  // namespace wmlab::text
