#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "wmlab/lm/model.hpp"
#include "wmlab/text/tokenizer.hpp"

namespace wmlab::lm {

/// Rewrites the distribution in place. `generated` holds the tokens
/// produced so far (prompt excluded).
using LogitTransform =
    std::function<void(std::span<const TokenId> generated, NextTokenDistribution& probs)>;

/// Picks the next token. `rng` is the generation's own stream.
using Sampler = std::function<TokenId(std::span<const TokenId> generated,
                                      std::span<const double> probs, std::mt19937_64& rng)>;

/// Returns a token to emit without consulting the model or the hooks.
using ForcedToken = std::function<std::optional<TokenId>(std::span<const TokenId> generated)>;

struct GenerationConfig {
  std::size_t max_tokens = 1024;
  std::uint64_t seed = 0;
  std::vector<TokenId> prompt;

  LogitTransform logit_transform;  // empty: none
  Sampler sampler;                 // empty: multinomial draw
  std::optional<TokenId> terminator;
  ForcedToken forced_token;
  /// Tokens for which this returns true are still handed to the hooks but
  /// are left out of the model's context.
  std::function<bool(TokenId)> hidden_from_model;
};

/// Inverse-CDF draw with one uniform from `rng`.
TokenId sample_multinomial(std::span<const double> probs, std::mt19937_64& rng);

/// Greedy choice, lowest id on ties.
TokenId argmax_token(std::span<const double> probs);

/// Generated tokens only; stops after max_tokens or after emitting the
/// terminator. Bit-reproducible for a given (model, config).
text::TokenSeq generate(const LanguageModel& model, const GenerationConfig& cfg);

}  // namespace wmlab::lm
