#include "wmlab/lm/ngram.hpp"

#include <algorithm>
#include <fstream>

#include "wmlab/common/error.hpp"
#include "wmlab/text/tokenizer.hpp"

namespace wmlab::lm {

NgramCounts::NgramCounts(std::size_t order) : order_(order) {
  if (order < 1 || order > 5) throw ConfigError("n-gram order must be in [1,5]");
}

std::size_t NgramCounts::KeyHash::operator()(const std::vector<TokenId>& k) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (TokenId t : k) {
    h ^= t;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

std::vector<TokenId> NgramCounts::key(std::span<const TokenId> history) const {
  std::vector<TokenId> k(order_, kBeginToken);
  const std::size_t take = std::min(order_, history.size());
  std::copy(history.end() - static_cast<std::ptrdiff_t>(take), history.end(),
            k.end() - static_cast<std::ptrdiff_t>(take));
  return k;
}

void NgramCounts::add(std::span<const TokenId> context, TokenId next, double weight) {
  Row& row = rows_[key(context)];
  auto it = std::lower_bound(row.counts.begin(), row.counts.end(), next,
                             [](const auto& e, TokenId id) { return e.first < id; });
  if (it != row.counts.end() && it->first == next) {
    it->second += weight;
  } else {
    row.counts.insert(it, {next, weight});
  }
  row.total += weight;
}

void NgramCounts::add_document(std::span<const TokenId> tokens, double weight) {
  for (std::size_t i = 0; i < tokens.size(); ++i) add(tokens.first(i), tokens[i], weight);
}

void NgramCounts::set(std::span<const TokenId> context,
                      std::vector<std::pair<TokenId, double>> counts) {
  std::sort(counts.begin(), counts.end());
  Row row;
  for (const auto& [id, c] : counts) {
    if (c < 0.0) throw Error("negative n-gram count");
    row.total += c;
  }
  row.counts = std::move(counts);
  rows_[key(context)] = std::move(row);
}

const NgramCounts::Row* NgramCounts::find(std::span<const TokenId> context) const {
  auto it = rows_.find(key(context));
  return it == rows_.end() ? nullptr : &it->second;
}

NgramModel::NgramModel(std::shared_ptr<const text::Vocabulary> vocab, NgramCounts counts,
                       std::vector<TokenId> support, double alpha)
    : vocab_(std::move(vocab)), counts_(std::move(counts)), support_(std::move(support)),
      alpha_(alpha) {
  if (!vocab_) throw ConfigError("n-gram model needs a vocabulary");
  if (!(alpha_ > 0.0)) throw ConfigError("smoothing alpha must be positive");
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
  if (support_.empty()) throw EmptyCorpus("n-gram model has an empty support");
  if (support_.back() >= vocab_->size()) throw ConfigError("support id outside vocabulary");
}

void NgramModel::distribution(std::span<const TokenId> context, NextTokenDistribution& out) const {
  out.assign(vocab_->size(), 0.0);
  const NgramCounts::Row* row = counts_.find(context);
  const double total = row ? row->total : 0.0;
  const double norm = total + alpha_ * static_cast<double>(support_.size());
  const double base = alpha_ / norm;
  for (TokenId id : support_) out[id] = base;
  if (row) {
    for (const auto& [id, c] : row->counts) out[id] += c / norm;
  }
}

double NgramModel::probability(std::span<const TokenId> context, TokenId next) const {
  if (!std::binary_search(support_.begin(), support_.end(), next)) return 0.0;
  const NgramCounts::Row* row = counts_.find(context);
  const double total = row ? row->total : 0.0;
  double count = 0.0;
  if (row) {
    auto it = std::lower_bound(row->counts.begin(), row->counts.end(), next,
                               [](const auto& e, TokenId id) { return e.first < id; });
    if (it != row->counts.end() && it->first == next) count = it->second;
  }
  return (count + alpha_) / (total + alpha_ * static_cast<double>(support_.size()));
}

std::shared_ptr<const NgramModel> train_ngram(std::span<const std::string> corpus,
                                              std::shared_ptr<const text::Vocabulary> vocab,
                                              NgramOptions options) {
  if (!vocab) throw ConfigError("train_ngram needs a vocabulary");
  NgramCounts counts(options.order);
  std::vector<bool> seen(vocab->size(), false);
  std::size_t documents = 0;
  for (const auto& doc : corpus) {
    const auto seq = text::tokenize(doc, *vocab);
    if (seq.empty()) continue;
    ++documents;
    counts.add_document(seq.ids);
    for (TokenId id : seq.ids) seen[id] = true;
  }
  if (documents == 0) throw EmptyCorpus("training corpus has no non-empty document");
  std::vector<TokenId> support;
  for (TokenId id = 0; id < seen.size(); ++id) {
    if (seen[id]) support.push_back(id);
  }
  return std::make_shared<const NgramModel>(std::move(vocab), std::move(counts), std::move(support),
                                            options.alpha);
}

std::vector<std::string> load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open corpus file " + path);
  std::vector<std::string> docs;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) docs.push_back(std::move(line));
  }
  return docs;
}

}  // namespace wmlab::lm
