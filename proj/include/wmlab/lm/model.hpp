#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "wmlab/text/vocabulary.hpp"

namespace wmlab::lm {

using text::TokenId;

/// Probabilities over the whole vocabulary, indexed by token id.
using NextTokenDistribution = std::vector<double>;

/// Throws InvalidDistribution unless `probs` has `vocab_size` finite,
/// non-negative entries summing to 1 within `tolerance`.
void validate_distribution(std::span<const double> probs, std::size_t vocab_size,
                           double tolerance = 1e-9);

class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual std::string_view backend_id() const = 0;
  virtual const text::Vocabulary& vocab() const = 0;
  virtual std::shared_ptr<const text::Vocabulary> shared_vocab() const = 0;
  /// Longest context the model looks at; older tokens are ignored.
  virtual std::size_t context_limit() const = 0;

  /// Next-token distribution after `context`; `out` is resized to |V|.
  virtual void distribution(std::span<const TokenId> context, NextTokenDistribution& out) const = 0;

  NextTokenDistribution distribution(std::span<const TokenId> context) const {
    NextTokenDistribution out;
    distribution(context, out);
    return out;
  }
};

using LanguageModelHandle = std::shared_ptr<const LanguageModel>;

}  // namespace wmlab::lm
