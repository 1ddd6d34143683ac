#include "wmlab/posttext/synonym_table.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "wmlab/common/error.hpp"
#include "wmlab/text/unicode.hpp"

namespace wmlab::posttext {

SynonymTable::SynonymTable(const std::vector<Row>& rows) {
  for (const auto& r : rows) {
    if (r.word.empty() || r.candidate.empty()) throw ConfigError("synonym row with an empty word");
    if (!(r.similarity >= 0.0 && r.similarity <= 1.0)) {
      throw ConfigError("synonym similarity outside [0,1] for '" + r.word + "'");
    }
    entries_[text::to_lower_utf8(r.word)].push_back({r.candidate, r.similarity});
  }
  for (auto& [word, cands] : entries_) {
    std::stable_sort(cands.begin(), cands.end(),
                     [](const auto& a, const auto& b) { return a.similarity > b.similarity; });
  }
}

SynonymTable SynonymTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open synonym table " + path.string());
  std::vector<Row> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected three columns");
    }
    Row row{line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), 0.0};
    const char* first = line.data() + t2 + 1;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, row.similarity);
    if (ec != std::errc() || ptr != last) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": bad similarity");
    }
    rows.push_back(std::move(row));
  }
  return SynonymTable(rows);
}

const std::vector<SynonymCandidate>* SynonymTable::find(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string match_case(std::string_view model, std::string_view replacement) {
  const auto m = text::decode_utf8(model);
  auto r = text::decode_utf8(replacement);
  std::size_t letters = 0, upper = 0;
  for (char32_t c : m) {
    if (text::to_lower(c) != c || text::to_upper(c) != c) {
      ++letters;
      if (text::is_upper(c)) ++upper;
    }
  }
  if (letters > 1 && upper == letters) {
    for (auto& c : r) c = text::to_upper(c);
  } else if (!m.empty() && text::is_upper(m.front()) && !r.empty()) {
    r.front() = text::to_upper(r.front());
  }
  return text::encode_utf8(r);
}

}  // namespace wmlab::posttext
