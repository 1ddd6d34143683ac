#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wmlab/common/calibration.hpp"
#include "wmlab/common/detection.hpp"

namespace wmlab::posttext {

/// A watermark embedded into finished text.
class PosttextScheme {
 public:
  virtual ~PosttextScheme() = default;

  virtual const std::string& id() const = 0;
  virtual std::string inject(std::string_view text, std::uint64_t seed) const = 0;

  /// Whether detect() needs a null calibration; format schemes do not.
  virtual bool calibrated() const = 0;
  /// Statistic over the first L units; only meaningful when calibrated().
  virtual std::vector<double> prefix_statistics(std::string_view text) const = 0;
  /// `cal` may be null when calibrated() is false.
  virtual DetectionReport detect(std::string_view text, const NullCalibration* cal) const = 0;
};

}  // namespace wmlab::posttext
