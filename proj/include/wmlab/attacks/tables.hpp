#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace wmlab::attacks {

/// Rows of (expanded phrase, contracted form), e.g. ("is not", "isn't").
class ContractionTable {
 public:
  struct Row {
    std::vector<std::string> expanded_words;  // lowercased
    std::string expanded;
    std::string contracted;
  };

  ContractionTable() = default;
  /// Pairs of (expanded, contracted).
  explicit ContractionTable(const std::vector<std::pair<std::string, std::string>>& pairs);
  /// UTF-8 TSV: expanded<TAB>contracted.
  static ContractionTable load(const std::filesystem::path& path);

  const std::vector<Row>& rows() const { return rows_; }
  /// Row whose contracted form matches `word` (lowercased, ASCII apostrophe).
  const Row* by_contracted(std::string_view word) const;
  bool empty() const { return rows_.empty(); }
  std::size_t max_phrase_words() const { return max_words_; }

 private:
  std::vector<Row> rows_;
  std::map<std::string, std::size_t, std::less<>> contracted_index_;
  std::size_t max_words_ = 0;
};

/// Lowercased correct word -> misspelled variants in file order.
class MisspellingTable {
 public:
  MisspellingTable() = default;
  explicit MisspellingTable(const std::vector<std::pair<std::string, std::string>>& pairs);
  /// UTF-8 TSV: correct<TAB>misspelling.
  static MisspellingTable load(const std::filesystem::path& path);

  const std::vector<std::string>* find(std::string_view lower_word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

/// Most frequent lowercased words of a corpus, most frequent first (ties
/// alphabetical).
std::vector<std::string> top_words(const std::vector<std::string>& documents, std::size_t limit);

/// Lowercases and maps U+2019 to an ASCII apostrophe.
std::string fold_word(std::string_view word);

}  // namespace wmlab::attacks
