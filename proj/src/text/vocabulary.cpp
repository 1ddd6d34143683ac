#include "wmlab/text/vocabulary.hpp"

#include <fstream>
#include <unordered_set>

#include "wmlab/common/error.hpp"
#include "wmlab/text/segment.hpp"
#include "wmlab/text/unicode.hpp"

namespace wmlab::text {

Vocabulary::Vocabulary(std::vector<std::string> tokens)
    : tokens_(std::move(tokens)), root_(256, 0) {
  trie_.emplace_back();
  fingerprint_ = 0xcbf29ce484222325ULL;
  for (std::size_t id = 0; id < tokens_.size(); ++id) {
    const auto& tok = tokens_[id];
    if (tok.empty()) throw ConfigError("vocabulary token " + std::to_string(id) + " is empty");
    if (tok.find('\n') != std::string::npos) throw ConfigError("vocabulary tokens cannot contain newlines");
    decode_utf8(tok);  // validates
    if (!index_.emplace(tok, static_cast<TokenId>(id)).second) {
      throw ConfigError("duplicate vocabulary token at id " + std::to_string(id));
    }
    std::uint32_t node = 0;
    for (unsigned char b : tok) {
      std::uint32_t next = child(node, b);
      if (next == 0) {
        next = static_cast<std::uint32_t>(trie_.size());
        trie_[node].children.emplace_back(b, next);
        if (node == 0) root_[b] = next;
        trie_.emplace_back();
      }
      node = next;
    }
    trie_[node].token = static_cast<std::int64_t>(id);
    for (unsigned char b : tok) {
      fingerprint_ ^= b;
      fingerprint_ *= 0x100000001b3ULL;
    }
    fingerprint_ ^= 0xFF;
    fingerprint_ *= 0x100000001b3ULL;
  }
}

std::uint32_t Vocabulary::child(std::uint32_t node, unsigned char byte) const {
  if (node == 0) return root_[byte];
  for (const auto& [b, next] : trie_[node].children) {
    if (b == byte) return next;
  }
  return 0;
}

std::optional<TokenId> Vocabulary::lookup(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocabulary::longest_match(std::string_view text, std::size_t pos, TokenId& id) const {
  std::uint32_t node = 0;
  std::size_t best = 0;
  for (std::size_t i = pos; i < text.size(); ++i) {
    node = child(node, static_cast<unsigned char>(text[i]));
    if (node == 0) break;
    if (trie_[node].token >= 0) {
      best = i + 1 - pos;
      id = static_cast<TokenId>(trie_[node].token);
    }
  }
  return best;
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open vocabulary file " + path.string());
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) tokens.push_back(line);
  return Vocabulary(std::move(tokens));
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write vocabulary file " + path.string());
  for (const auto& t : tokens_) out << t << '\n';
}

std::u32string default_fallback_alphabet() {
  std::u32string a;
  a.push_back(U'\t');
  for (char32_t c = 0x20; c <= 0x7E; ++c) a.push_back(c);
  a.push_back(0xA0);
  for (char32_t c = 0x2000; c <= 0x200B; ++c) a.push_back(c);
  a.push_back(0x2019);
  a.push_back(0x202F);
  a.push_back(0x205F);
  a.push_back(0x3000);
  a.push_back(0xFEFF);
  a.push_back(kEmojiCodepoint);
  return a;
}

Vocabulary build_word_vocabulary(std::span<const std::string> documents) {
  std::vector<std::string> tokens;
  std::unordered_set<std::string> seen;
  auto add = [&](std::string tok) {
    if (seen.insert(tok).second) tokens.push_back(std::move(tok));
  };
  for (char32_t c : default_fallback_alphabet()) add(encode_utf8(std::u32string(1, c)));
  for (const auto& doc : documents) {
    const auto text = decode_utf8(doc);
    const auto spans = segment_words(std::u32string_view(text));
    for (std::size_t k = 0; k < spans.size(); ++k) {
      const auto& s = spans[k];
      if (s.kind == SpanKind::kWord) {
        const bool spaced = k > 0 && spans[k - 1].kind == SpanKind::kWhitespace &&
                            spans[k - 1].length() == 1 && text[spans[k - 1].start] == U' ';
        std::u32string tok = spaced ? U" " : U"";
        tok.append(text.substr(s.start, s.length()));
        add(encode_utf8(tok));
      } else if (s.kind == SpanKind::kPunctuation) {
        add(encode_utf8(text.substr(s.start, s.length())));
      }
    }
  }
  return Vocabulary(std::move(tokens));
}

}  // namespace wmlab::text
