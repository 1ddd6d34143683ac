#pragma once

#include <functional>
#include <memory>

#include "wmlab/lm/model.hpp"

namespace wmlab::lm {

/// Deterministic model defined by a function of the context. Used for
/// tests and hand-traced examples.
class FixtureModel final : public LanguageModel {
 public:
  using Table = std::function<NextTokenDistribution(std::span<const TokenId>)>;

  FixtureModel(std::shared_ptr<const text::Vocabulary> vocab, Table table,
               std::size_t context_limit = 1024);

  /// Puts all mass on `token` regardless of context.
  static std::shared_ptr<const FixtureModel> constant(std::shared_ptr<const text::Vocabulary> vocab,
                                                      TokenId token);

  std::string_view backend_id() const override { return "fixture"; }
  const text::Vocabulary& vocab() const override { return *vocab_; }
  std::shared_ptr<const text::Vocabulary> shared_vocab() const override { return vocab_; }
  std::size_t context_limit() const override { return context_limit_; }
  void distribution(std::span<const TokenId> context, NextTokenDistribution& out) const override;
  using LanguageModel::distribution;

 private:
  std::shared_ptr<const text::Vocabulary> vocab_;
  Table table_;
  std::size_t context_limit_;
};

}  // namespace wmlab::lm
