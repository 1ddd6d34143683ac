#include "wmlab/pretext/convert.hpp"

#include <array>
#include <cmath>

#include "wmlab/common/error.hpp"

namespace wmlab::pretext {

double convert_token_score(int bit, double u) {
  return bit == 1 ? -std::log(u) : -std::log1p(-u);
}

Convert::Convert(ConvertParams params, std::size_t vocab_size)
    : params_(std::move(params)), prf_(params_.key), bit_map_(vocab_size) {
  if (params_.prefix_h == 0) throw ConfigError("prefix window must be at least 1");
  std::array<std::uint32_t, 1> msg{};
  for (std::size_t v = 0; v < vocab_size; ++v) {
    msg[0] = static_cast<std::uint32_t>(v);
    bit_map_[v] = static_cast<std::uint8_t>(prf_.hash(keyed::PrfDomain::kBitMap, msg) & 1U);
  }
}

ConvertDraw Convert::sample_with(std::span<const std::uint8_t> bit_map, double u, double v,
                                 std::span<const double> probs) {
  double mass_one = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (bit_map[i]) mass_one += probs[i];
  }
  ConvertDraw draw;
  draw.u = u;
  draw.bit = u <= mass_one ? 1 : 0;
  double class_mass = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (bit_map[i] == draw.bit) class_mass += probs[i];
  }
  draw.fell_back = !(class_mass > 0.0);
  const double target = v * (draw.fell_back ? 1.0 : class_mass);
  double cumulative = 0.0;
  std::size_t last = probs.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0 || (!draw.fell_back && bit_map[i] != draw.bit)) continue;
    cumulative += probs[i];
    last = i;
    if (target < cumulative) break;
  }
  if (last == probs.size()) throw InvalidDistribution("distribution has no mass");
  draw.token = static_cast<TokenId>(last);
  return draw;
}

ConvertDraw Convert::sample(const keyed::PrefixContext& ctx, std::span<const double> probs) const {
  const double u = keyed::prefix_uniform(prf_, ctx, 0);
  const double v = keyed::prefix_uniform(prf_, ctx, 1);
  return sample_with(bit_map_, u, v, probs);
}

void Convert::install(lm::GenerationConfig& cfg) const {
  cfg.sampler = [this](std::span<const TokenId> generated, std::span<const double> probs,
                       std::mt19937_64&) {
    return sample(keyed::PrefixContext::from_history(generated, params_.prefix_h), probs).token;
  };
}

std::vector<double> Convert::evidence(std::span<const TokenId> tokens) const {
  std::vector<double> out(tokens.size());
  for (std::size_t j = 0; j < tokens.size(); ++j) {
    const auto ctx = keyed::PrefixContext::from_history(tokens.first(j), params_.prefix_h);
    out[j] = convert_token_score(bit_map_[tokens[j]], keyed::prefix_uniform(prf_, ctx, 0));
  }
  return out;
}

std::vector<double> Convert::prefix_statistics(std::span<const TokenId> tokens) const {
  auto curve = evidence(tokens);
  for (std::size_t j = 1; j < curve.size(); ++j) curve[j] += curve[j - 1];
  return curve;
}

}  // namespace wmlab::pretext
