#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

namespace wmlab {

/// Empirical null distribution of a detection statistic, indexed by length.
///
/// Each null sample contributes a curve: curve[L-1] is the statistic the
/// detector reports on the sample's first L units (tokens or encodable
/// words). The cutoff at length L is the nearest-rank `quantile` of the
/// values at L of the samples that reach L, so decision = statistic > cutoff
/// has false-positive rate at most 1 - quantile on the null pool. Lengths
/// reached by fewer than half of the samples are not calibrated.
class NullCalibration {
 public:
  NullCalibration() = default;
  NullCalibration(std::span<const std::vector<double>> curves, double quantile);

  /// Lengths beyond max_length() are clamped; detectors truncate to match.
  double cutoff(std::size_t length) const;
  std::size_t max_length() const { return cutoffs_.size(); }
  std::size_t samples() const { return samples_; }
  double quantile() const { return quantile_; }
  bool empty() const { return cutoffs_.empty(); }

  nlohmann::json to_json() const;

 private:
  std::vector<double> cutoffs_;
  std::size_t samples_ = 0;
  double quantile_ = 0.95;
};

}  // namespace wmlab
