#include "wmlab/attacks/tables.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "wmlab/common/error.hpp"
#include "wmlab/text/segment.hpp"
#include "wmlab/text/unicode.hpp"

namespace wmlab::attacks {
namespace {

std::vector<std::pair<std::string, std::string>> read_pairs(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open table " + path.string());
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected two columns");
    }
    pairs.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return pairs;
}

}  // namespace

std::string fold_word(std::string_view word) {
  auto cps = text::to_lower(text::decode_utf8(word));
  for (auto& c : cps) {
    if (c == 0x2019) c = U'\'';
  }
  return text::encode_utf8(cps);
}

ContractionTable::ContractionTable(const std::vector<std::pair<std::string, std::string>>& pairs) {
  for (const auto& [expanded, contracted] : pairs) {
    Row row;
    row.expanded = expanded;
    row.contracted = contracted;
    const text::SegmentedText seg(expanded);
    for (const auto& s : seg.spans) {
      if (s.kind == text::SpanKind::kWord) {
        row.expanded_words.push_back(fold_word(text::encode_utf8(seg.view(s))));
      } else if (!(s.kind == text::SpanKind::kWhitespace && seg.view(s) == U" ")) {
        throw ConfigError("contraction phrase '" + expanded + "' must be words separated by spaces");
      }
    }
    if (row.expanded_words.empty()) throw ConfigError("empty contraction phrase");
    max_words_ = std::max(max_words_, row.expanded_words.size());
    contracted_index_.emplace(fold_word(contracted), rows_.size());
    rows_.push_back(std::move(row));
  }
}

ContractionTable ContractionTable::load(const std::filesystem::path& path) {
  return ContractionTable(read_pairs(path));
}

const ContractionTable::Row* ContractionTable::by_contracted(std::string_view word) const {
  auto it = contracted_index_.find(word);
  return it == contracted_index_.end() ? nullptr : &rows_[it->second];
}

MisspellingTable::MisspellingTable(const std::vector<std::pair<std::string, std::string>>& pairs) {
  for (const auto& [correct, wrong] : pairs) {
    if (fold_word(correct) == fold_word(wrong)) {
      throw ConfigError("misspelling of '" + correct + "' is the word itself");
    }
    entries_[fold_word(correct)].push_back(wrong);
  }
}

MisspellingTable MisspellingTable::load(const std::filesystem::path& path) {
  return MisspellingTable(read_pairs(path));
}

const std::vector<std::string>* MisspellingTable::find(std::string_view lower_word) const {
  auto it = entries_.find(lower_word);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> top_words(const std::vector<std::string>& documents, std::size_t limit) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& doc : documents) {
    const text::SegmentedText seg(doc);
    for (const auto& s : seg.spans) {
      if (s.kind == text::SpanKind::kWord) ++counts[text::encode_utf8(text::to_lower(seg.view(s)))];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (ranked.size() > limit) ranked.resize(limit);
  std::vector<std::string> words;
  words.reserve(ranked.size());
  for (auto& [w, c] : ranked) words.push_back(std::move(w));
  return words;
}

}  // namespace wmlab::attacks
