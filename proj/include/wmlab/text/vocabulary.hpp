#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wmlab::text {

using TokenId = std::uint32_t;

/// Ordered token strings; token ids are the dense indices [0, size()).
///
/// Immutable after construction. Lookup and render are mutually inverse, and
/// the embedded byte trie answers longest-prefix queries for the tokenizer.
class Vocabulary {
 public:
  explicit Vocabulary(std::vector<std::string> tokens);

  /// One token per line, UTF-8, line index = token id.
  static Vocabulary load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  std::size_t size() const { return tokens_.size(); }
  std::optional<TokenId> lookup(std::string_view token) const;
  const std::string& render(TokenId id) const { return tokens_.at(id); }
  std::span<const std::string> tokens() const { return tokens_; }

  /// Identifies the vocabulary a TokenSeq was produced with.
  std::uint64_t fingerprint() const { return fingerprint_; }

  /// Longest vocabulary entry that is a prefix of text[pos..]; returns its
  /// byte length (0 if none) and stores the id in `id`.
  std::size_t longest_match(std::string_view text, std::size_t pos, TokenId& id) const;

 private:
  struct TrieNode {
    std::vector<std::pair<unsigned char, std::uint32_t>> children;
    std::int64_t token = -1;
  };
  std::uint32_t child(std::uint32_t node, unsigned char byte) const;

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
  std::vector<TrieNode> trie_;
  std::vector<std::uint32_t> root_;  // 256-way fan-out for the root node
  std::uint64_t fingerprint_ = 0;
};

/// Characters every built vocabulary carries as single-character fallbacks:
/// printable ASCII, tab, the Unicode space separators and the emoji used by
/// the emoji attack.
std::u32string default_fallback_alphabet();

inline constexpr char32_t kEmojiCodepoint = 0x1F60A;

/// Word-level vocabulary for a corpus: fallback characters first, then each
/// corpus word with its preceding U+0020 attached (" word") or bare when it
/// is not preceded by a single space, then punctuation, in first-seen order.
Vocabulary build_word_vocabulary(std::span<const std::string> documents);

}  // namespace wmlab::text
