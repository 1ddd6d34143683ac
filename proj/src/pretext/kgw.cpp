#include "wmlab/pretext/kgw.hpp"

#include <cmath>

#include "wmlab/common/error.hpp"

namespace wmlab::pretext {

double kgw_z_score(std::size_t green_count, std::size_t length, double gamma) {
  if (length == 0) throw EmptyInput("z-score of an empty sequence");
  const double l = static_cast<double>(length);
  return (static_cast<double>(green_count) - gamma * l) / std::sqrt(l * gamma * (1.0 - gamma));
}

void kgw_bias(const std::vector<bool>& green, double delta, lm::NextTokenDistribution& probs) {
  const double boost = std::exp(delta);
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (green[i]) probs[i] *= boost;
    total += probs[i];
  }
  for (double& p : probs) p /= total;
}

std::size_t Kgw::KeyHash::operator()(const std::vector<TokenId>& k) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (TokenId t : k) h = (h ^ t) * 0xff51afd7ed558ccdULL;
  return static_cast<std::size_t>(h ^ (h >> 32));
}

Kgw::Kgw(KgwParams params, std::size_t vocab_size)
    : params_(std::move(params)), vocab_size_(vocab_size), prf_(params_.key),
      id_(params_.fixed_prefix ? "unigram" : "kgw") {
  keyed::green_count(params_.gamma, vocab_size_);  // validates gamma
  if (params_.delta < 0.0) throw ConfigError("delta must be non-negative");
  if (params_.prefix_h == 0) throw ConfigError("prefix window must be at least 1");
}

keyed::PrefixContext Kgw::context_at(std::span<const TokenId> history) const {
  return params_.fixed_prefix ? keyed::PrefixContext::constant()
                              : keyed::PrefixContext::from_history(history, params_.prefix_h);
}

const std::vector<bool>& Kgw::mask(const keyed::PrefixContext& ctx) const {
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(ctx.window); it != cache_.end()) return *it->second;
  }
  auto computed = std::make_shared<const std::vector<bool>>(
      keyed::green_mask(prf_, ctx, params_.gamma, vocab_size_));
  std::lock_guard lock(cache_mutex_);
  // another thread may have inserted the same list meanwhile; keep the first
  auto [it, inserted] = cache_.emplace(ctx.window, std::move(computed));
  return *it->second;
}

bool Kgw::is_green(const keyed::PrefixContext& ctx, TokenId token) const {
  return mask(ctx)[token];
}

void Kgw::transform(const keyed::PrefixContext& ctx, lm::NextTokenDistribution& probs) const {
  if (params_.delta == 0.0) return;
  kgw_bias(mask(ctx), params_.delta, probs);
}

void Kgw::install(lm::GenerationConfig& cfg) const {
  cfg.logit_transform = [this](std::span<const TokenId> generated, lm::NextTokenDistribution& probs) {
    transform(context_at(generated), probs);
  };
}

std::vector<double> Kgw::evidence(std::span<const TokenId> tokens) const {
  std::vector<double> out(tokens.size());
  for (std::size_t j = 0; j < tokens.size(); ++j) {
    out[j] = is_green(context_at(tokens.first(j)), tokens[j]) ? 1.0 : 0.0;
  }
  return out;
}

std::vector<double> Kgw::prefix_statistics(std::span<const TokenId> tokens) const {
  std::vector<double> curve(tokens.size());
  std::size_t green = 0;
  for (std::size_t j = 0; j < tokens.size(); ++j) {
    if (is_green(context_at(tokens.first(j)), tokens[j])) ++green;
    curve[j] = kgw_z_score(green, j + 1, params_.gamma);
  }
  return curve;
}

ZScoreReport Kgw::score(std::span<const TokenId> tokens) const {
  if (tokens.empty()) throw EmptyInput("cannot detect on an empty token sequence");
  ZScoreReport r;
  r.length = tokens.size();
  for (std::size_t j = 0; j < tokens.size(); ++j) {
    if (is_green(context_at(tokens.first(j)), tokens[j])) ++r.green_count;
  }
  r.z = kgw_z_score(r.green_count, r.length, params_.gamma);
  return r;
}

}  // namespace wmlab::pretext
