#include "wmlab/lm/fixture_model.hpp"

#include "wmlab/common/error.hpp"

namespace wmlab::lm {

FixtureModel::FixtureModel(std::shared_ptr<const text::Vocabulary> vocab, Table table,
                           std::size_t context_limit)
    : vocab_(std::move(vocab)), table_(std::move(table)), context_limit_(context_limit) {
  if (!vocab_ || !table_) throw ConfigError("fixture model needs a vocabulary and a table");
}

std::shared_ptr<const FixtureModel> FixtureModel::constant(
    std::shared_ptr<const text::Vocabulary> vocab, TokenId token) {
  const std::size_t n = vocab->size();
  if (token >= n) throw ConfigError("fixture token outside vocabulary");
  return std::make_shared<const FixtureModel>(std::move(vocab), [n, token](std::span<const TokenId>) {
    NextTokenDistribution d(n, 0.0);
    d[token] = 1.0;
    return d;
  });
}

void FixtureModel::distribution(std::span<const TokenId> context, NextTokenDistribution& out) const {
  if (context.size() > context_limit_) context = context.last(context_limit_);
  out = table_(context);
}

}  // namespace wmlab::lm
