#pragma once

#include <cstdint>

#include "wmlab/keyed/prf.hpp"
#include "wmlab/pretext/scheme.hpp"

namespace wmlab::pretext {

struct ConvertParams {
  keyed::SecretKey key;
  std::size_t prefix_h = 4;
};

struct ConvertDraw {
  TokenId token = 0;
  int bit = 0;
  double u = 0.0;
  bool fell_back = false;  // the chosen bit class had no mass
};

/// Score of one token: ln(1/u) for a 1-token, ln(1/(1-u)) otherwise.
double convert_token_score(int bit, double u);

class Convert final : public PretextScheme {
 public:
  Convert(ConvertParams params, std::size_t vocab_size);

  const std::string& id() const override { return id_; }
  void install(lm::GenerationConfig& cfg) const override;
  std::vector<double> prefix_statistics(std::span<const TokenId> tokens) const override;
  std::vector<double> evidence(std::span<const TokenId> tokens) const override;

  /// Keyed token -> bit assignment.
  int bit(TokenId token) const { return bit_map_[token]; }
  std::span<const std::uint8_t> bit_map() const { return bit_map_; }

  /// Emits bit 1 iff u <= mass of 1-tokens, then draws within that class
  /// with a second keyed uniform.
  ConvertDraw sample(const keyed::PrefixContext& ctx, std::span<const double> probs) const;

  /// Same as sample() but with an explicit bit map and uniforms.
  static ConvertDraw sample_with(std::span<const std::uint8_t> bit_map, double u, double v,
                                 std::span<const double> probs);

 private:
  ConvertParams params_;
  keyed::KeyedPrf prf_;
  std::vector<std::uint8_t> bit_map_;
  std::string id_ = "convert";
};

}  // namespace wmlab::pretext
