#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>

#include "wmlab/keyed/green_list.hpp"
#include "wmlab/pretext/scheme.hpp"

namespace wmlab::pretext {

struct KgwParams {
  double gamma = 0.25;
  double delta = 2.0;
  keyed::SecretKey key;
  std::size_t prefix_h = 1;
  bool fixed_prefix = false;  // Unigram: one green list for every position
};

struct ZScoreReport {
  std::size_t green_count = 0;
  std::size_t length = 0;
  double z = 0.0;
  bool decision = false;
};

/// (green - gamma L) / sqrt(L gamma (1 - gamma)); throws EmptyInput for L = 0.
double kgw_z_score(std::size_t green_count, std::size_t length, double gamma);

/// Multiplies green probabilities by e^delta and renormalises.
void kgw_bias(const std::vector<bool>& green, double delta, lm::NextTokenDistribution& probs);

/// KGW, or Unigram when params.fixed_prefix is set.
class Kgw final : public PretextScheme {
 public:
  Kgw(KgwParams params, std::size_t vocab_size);

  const std::string& id() const override { return id_; }
  const KgwParams& params() const { return params_; }

  void install(lm::GenerationConfig& cfg) const override;
  std::vector<double> prefix_statistics(std::span<const TokenId> tokens) const override;
  std::vector<double> evidence(std::span<const TokenId> tokens) const override;

  /// Biases `probs` with the green list of the context ending `generated`.
  void transform(const keyed::PrefixContext& ctx, lm::NextTokenDistribution& probs) const;
  keyed::PrefixContext context_at(std::span<const TokenId> history) const;
  bool is_green(const keyed::PrefixContext& ctx, TokenId token) const;

  /// Green count and z over the whole sequence.
  ZScoreReport score(std::span<const TokenId> tokens) const;

 private:
  const std::vector<bool>& mask(const keyed::PrefixContext& ctx) const;

  KgwParams params_;
  std::size_t vocab_size_;
  keyed::KeyedPrf prf_;
  std::string id_;

  struct KeyHash {
    std::size_t operator()(const std::vector<TokenId>& k) const;
  };
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::vector<TokenId>, std::shared_ptr<const std::vector<bool>>, KeyHash>
      cache_;
};

}  // namespace wmlab::pretext
