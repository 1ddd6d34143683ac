#include "wmlab/pretext/exponential.hpp"

#include <cmath>
#include <limits>

#include "wmlab/common/error.hpp"

namespace wmlab::pretext {

TokenId exp_select(std::span<const double> uniforms, std::span<const double> probs) {
  double best = -std::numeric_limits<double>::infinity();
  std::size_t choice = probs.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    const double score = std::log(uniforms[i]) / probs[i];
    if (choice == probs.size() || score > best) {
      best = score;
      choice = i;
    }
  }
  if (choice == probs.size()) throw InvalidDistribution("distribution has no mass");
  return static_cast<TokenId>(choice);
}

Exponential::Exponential(ExpParams params, std::size_t vocab_size)
    : params_(std::move(params)), vocab_size_(vocab_size), prf_(params_.key) {
  if (params_.prefix_h == 0) throw ConfigError("prefix window must be at least 1");
}

TokenId Exponential::sample(const keyed::PrefixContext& ctx, std::span<const double> probs) const {
  std::vector<double> r(probs.size());
  keyed::prefix_uniforms(prf_, ctx, r);
  return exp_select(r, probs);
}

void Exponential::install(lm::GenerationConfig& cfg) const {
  cfg.sampler = [this](std::span<const TokenId> generated, std::span<const double> probs,
                       std::mt19937_64&) {
    return sample(keyed::PrefixContext::from_history(generated, params_.prefix_h), probs);
  };
}

std::vector<double> Exponential::evidence(std::span<const TokenId> tokens) const {
  std::vector<double> out(tokens.size());
  for (std::size_t j = 0; j < tokens.size(); ++j) {
    const auto ctx = keyed::PrefixContext::from_history(tokens.first(j), params_.prefix_h);
    const double r = keyed::prefix_uniform(prf_, ctx, tokens[j]);
    out[j] = -std::log1p(-r);
  }
  return out;
}

std::vector<double> Exponential::prefix_statistics(std::span<const TokenId> tokens) const {
  auto curve = evidence(tokens);
  for (std::size_t j = 1; j < curve.size(); ++j) curve[j] += curve[j - 1];
  return curve;
}

}  // namespace wmlab::pretext
