#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace wmlab::posttext {

struct SynonymCandidate {
  std::string word;
  double similarity = 0.0;
};

/// Lowercased word -> candidates, most similar first (file order on ties).
class SynonymTable {
 public:
  SynonymTable() = default;

  struct Row {
    std::string word;
    std::string candidate;
    double similarity;
  };
  explicit SynonymTable(const std::vector<Row>& rows);

  /// UTF-8 TSV: word<TAB>candidate<TAB>similarity. Lines starting with '#'
  /// and blank lines are ignored.
  static SynonymTable load(const std::filesystem::path& path);

  /// `word` must already be lowercased.
  const std::vector<SynonymCandidate>* find(std::string_view word) const;
  bool contains(std::string_view word) const { return find(word) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<std::string, std::vector<SynonymCandidate>, std::less<>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::vector<SynonymCandidate>, std::less<>> entries_;
};

/// Copies the case pattern of `model` onto `replacement`: all caps,
/// leading capital, or unchanged.
std::string match_case(std::string_view model, std::string_view replacement);

}  // namespace wmlab::posttext
