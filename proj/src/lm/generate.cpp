#include "wmlab/lm/generate.hpp"

#include <string>

#include "wmlab/common/error.hpp"
#include "wmlab/common/seed.hpp"

namespace wmlab::lm {

TokenId sample_multinomial(std::span<const double> probs, std::mt19937_64& rng) {
  const double u = unit_from_bits(rng());
  double cumulative = 0.0;
  std::size_t last_positive = probs.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    cumulative += probs[i];
    last_positive = i;
    if (u < cumulative) return static_cast<TokenId>(i);
  }
  // rounding left u above the accumulated sum
  if (last_positive == probs.size()) throw InvalidDistribution("distribution has no mass");
  return static_cast<TokenId>(last_positive);
}

TokenId argmax_token(std::span<const double> probs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < probs.size(); ++i) {
    if (probs[i] > probs[best]) best = i;
  }
  return static_cast<TokenId>(best);
}

text::TokenSeq generate(const LanguageModel& model, const GenerationConfig& cfg) {
  if (cfg.max_tokens == 0) throw ConfigError("max_tokens must be at least 1");
  const auto& vocab = model.vocab();
  const std::size_t n = vocab.size();

  std::mt19937_64 rng(cfg.seed);
  text::TokenSeq out;
  out.vocab_fingerprint = vocab.fingerprint();
  out.ids.reserve(cfg.max_tokens);

  std::vector<TokenId> visible(cfg.prompt);
  NextTokenDistribution probs;

  while (out.ids.size() < cfg.max_tokens) {
    std::optional<TokenId> next;
    if (cfg.forced_token) next = cfg.forced_token(out.ids);
    if (!next) {
      model.distribution(visible, probs);
      validate_distribution(probs, n);
      if (cfg.logit_transform) {
        cfg.logit_transform(out.ids, probs);
        validate_distribution(probs, n);
      }
      next = cfg.sampler ? cfg.sampler(out.ids, probs, rng) : sample_multinomial(probs, rng);
    }
    if (*next >= n) throw InvalidDistribution("sampler returned id " + std::to_string(*next));
    out.ids.push_back(*next);
    if (!(cfg.hidden_from_model && cfg.hidden_from_model(*next))) visible.push_back(*next);
    if (cfg.terminator && *next == *cfg.terminator) break;
  }
  return out;
}

}  // namespace wmlab::lm
