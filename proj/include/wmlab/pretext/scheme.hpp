#pragma once

#include <span>
#include <string>
#include <vector>

#include "wmlab/common/calibration.hpp"
#include "wmlab/common/detection.hpp"
#include "wmlab/lm/generate.hpp"

namespace wmlab::pretext {

using text::TokenId;

/// A watermark applied while generating: hooks for the generation loop
/// plus a detector over token ids.
class PretextScheme {
 public:
  virtual ~PretextScheme() = default;

  virtual const std::string& id() const = 0;

  /// Sets this scheme's logit transform or sampler on `cfg`.
  virtual void install(lm::GenerationConfig& cfg) const = 0;

  /// curve[L-1] is the detection statistic of tokens[0, L).
  virtual std::vector<double> prefix_statistics(std::span<const TokenId> tokens) const = 0;

  /// Per-position contribution to the statistic.
  virtual std::vector<double> evidence(std::span<const TokenId> tokens) const = 0;

  /// Scores at most cal.max_length() tokens against the calibrated cutoff
  /// for that length. Throws EmptyInput for an empty sequence.
  virtual DetectionReport detect(std::span<const TokenId> tokens, const NullCalibration& cal) const;
};

/// Length used for detection once the calibration range is taken into account.
std::size_t detection_length(std::span<const TokenId> tokens, const NullCalibration& cal);

}  // namespace wmlab::pretext
