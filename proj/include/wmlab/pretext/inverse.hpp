#pragma once

#include <memory>

#include "wmlab/keyed/key_sequence.hpp"
#include "wmlab/pretext/scheme.hpp"

namespace wmlab::pretext {

struct InvParams {
  keyed::SecretKey key;
  std::size_t m = 4096;    // key rows; must exceed the generation length
  std::size_t shifts = 2;  // cyclic offsets of the key, spaced m / shifts apart
  std::size_t band = 64;   // alignment band half-width
};

/// argmax over tokens with p > 0 of xi^(1/p).
TokenId inv_select(std::span<const double> key_row, std::span<const double> probs);

/// Aligned and unaligned scores for one key offset.
struct AlignmentScores {
  std::vector<double> aligned_prefix;  // [L-1] = best alignment score of tokens[0, L)
  double unaligned = 0.0;              // sum of -log(1 - xi) along the diagonal
};

class Inverse final : public PretextScheme {
 public:
  Inverse(InvParams params, std::size_t vocab_size);

  const std::string& id() const override { return id_; }
  const InvParams& params() const { return params_; }
  const keyed::KeySequence& key_sequence() const { return *xi_; }

  /// Picks the shift from the generation seed, then samples position t
  /// with key row (offset + t) mod m.
  void install(lm::GenerationConfig& cfg) const override;
  std::vector<double> prefix_statistics(std::span<const TokenId> tokens) const override;
  std::vector<double> evidence(std::span<const TokenId> tokens) const override;
  DetectionReport detect(std::span<const TokenId> tokens, const NullCalibration& cal) const override;

  /// Throws KeyExhausted once position >= m.
  TokenId sample(std::size_t position, std::size_t shift, std::span<const double> probs) const;
  std::size_t shift_for_seed(std::uint64_t seed) const;
  std::size_t row_for(std::size_t shift, std::size_t position) const;

  AlignmentScores align(std::span<const TokenId> tokens, std::size_t shift) const;
  /// Max over shifts of the unaligned score.
  double unaligned_score(std::span<const TokenId> tokens) const;

  /// Median of -log(1 - U), the insertion/deletion cost.
  static double gap_cost();

 private:
  InvParams params_;
  std::size_t vocab_size_;
  double cell_cost(std::size_t row, TokenId token) const {
    return cell_costs_[row * vocab_size_ + token];
  }

  std::shared_ptr<const keyed::KeySequence> xi_;
  std::vector<double> cell_costs_;  // -log(1 - xi), same layout as the key
  std::string id_ = "inverse";
};

}  // namespace wmlab::pretext
