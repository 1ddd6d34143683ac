#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wmlab/lm/model.hpp"

namespace wmlab::lm {

/// Padding id standing for "before the start of the document".
inline constexpr TokenId kBeginToken = 0xFFFFFFFFu;

/// Continuation counts keyed by the preceding `order` tokens. Counts may be
/// fractional so a distribution can be fitted directly.
class NgramCounts {
 public:
  explicit NgramCounts(std::size_t order);

  std::size_t order() const { return order_; }

  /// Adds every (context, next) pair of one document, padding the start
  /// with kBeginToken.
  void add_document(std::span<const TokenId> tokens, double weight = 1.0);
  /// `context` is any history; only its last order() tokens are used.
  void add(std::span<const TokenId> context, TokenId next, double weight);
  /// Replaces the counts stored for one context.
  void set(std::span<const TokenId> context, std::vector<std::pair<TokenId, double>> counts);

  struct Row {
    double total = 0.0;
    std::vector<std::pair<TokenId, double>> counts;  // ascending id
  };
  const Row* find(std::span<const TokenId> context) const;

  /// Context key of the last order() tokens of `history`, padded.
  std::vector<TokenId> key(std::span<const TokenId> history) const;

  std::size_t contexts() const { return rows_.size(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<TokenId>& k) const;
  };
  std::size_t order_;
  std::unordered_map<std::vector<TokenId>, Row, KeyHash> rows_;
  friend class NgramModel;
};

/// Add-alpha smoothed n-gram model. `order` is the number of conditioning
/// tokens. Smoothing mass is spread over the support (tokens seen as a
/// continuation at least once); other vocabulary entries get probability 0,
/// so sampling never emits fallback characters the corpus did not use.
/// Unseen contexts give the uniform distribution over the support.
class NgramModel final : public LanguageModel {
 public:
  NgramModel(std::shared_ptr<const text::Vocabulary> vocab, NgramCounts counts,
             std::vector<TokenId> support, double alpha);

  std::string_view backend_id() const override { return "ngram"; }
  const text::Vocabulary& vocab() const override { return *vocab_; }
  std::shared_ptr<const text::Vocabulary> shared_vocab() const override { return vocab_; }
  std::size_t context_limit() const override { return counts_.order(); }
  void distribution(std::span<const TokenId> context, NextTokenDistribution& out) const override;
  using LanguageModel::distribution;

  /// Probability of one continuation without building the full distribution.
  double probability(std::span<const TokenId> context, TokenId next) const;

  std::size_t order() const { return counts_.order(); }
  double alpha() const { return alpha_; }
  const NgramCounts& counts() const { return counts_; }
  std::span<const TokenId> support() const { return support_; }

 private:
  std::shared_ptr<const text::Vocabulary> vocab_;
  NgramCounts counts_;
  std::vector<TokenId> support_;
  double alpha_;
};

struct NgramOptions {
  std::size_t order = 1;
  double alpha = 0.1;
};

/// Tokenizes every document with `vocab` and counts continuations.
/// Throws EmptyCorpus when there is no document with at least one token.
std::shared_ptr<const NgramModel> train_ngram(std::span<const std::string> corpus,
                                              std::shared_ptr<const text::Vocabulary> vocab,
                                              NgramOptions options = {});

/// Plain UTF-8 file, one document per line; blank lines are skipped.
std::vector<std::string> load_corpus(const std::string& path);

}  // namespace wmlab::lm
