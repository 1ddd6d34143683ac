#pragma once

#include "wmlab/keyed/prf.hpp"
#include "wmlab/pretext/scheme.hpp"

namespace wmlab::pretext {

struct ExpParams {
  keyed::SecretKey key;
  std::size_t prefix_h = 4;
};

/// argmax over tokens with p > 0 of r^(1/p), computed as log(r)/p.
/// `uniforms[i]` is the keyed uniform of token i.
TokenId exp_select(std::span<const double> uniforms, std::span<const double> probs);

class Exponential final : public PretextScheme {
 public:
  Exponential(ExpParams params, std::size_t vocab_size);

  const std::string& id() const override { return id_; }
  void install(lm::GenerationConfig& cfg) const override;
  std::vector<double> prefix_statistics(std::span<const TokenId> tokens) const override;
  std::vector<double> evidence(std::span<const TokenId> tokens) const override;

  TokenId sample(const keyed::PrefixContext& ctx, std::span<const double> probs) const;

 private:
  ExpParams params_;
  std::size_t vocab_size_;
  keyed::KeyedPrf prf_;
  std::string id_ = "exponential";
};

}  // namespace wmlab::pretext
