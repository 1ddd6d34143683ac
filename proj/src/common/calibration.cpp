#include "wmlab/common/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "wmlab/common/error.hpp"

namespace wmlab {

NullCalibration::NullCalibration(std::span<const std::vector<double>> curves, double quantile)
    : samples_(curves.size()), quantile_(quantile) {
  if (curves.empty()) throw ConfigError("null calibration needs at least one sample");
  if (!(quantile > 0.0 && quantile < 1.0)) throw ConfigError("calibration quantile must be in (0,1)");

  // Curves may differ in length (e.g. counts of encodable words). A length
  // is calibrated while at least half of the samples reach it.
  std::vector<std::size_t> lengths;
  lengths.reserve(curves.size());
  for (const auto& c : curves) lengths.push_back(c.size());
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  const std::size_t quorum = (curves.size() + 1) / 2;
  const std::size_t usable = lengths[quorum - 1];
  if (usable == 0) throw ConfigError("null calibration samples are too short");

  cutoffs_.resize(usable);
  std::vector<double> column;
  column.reserve(curves.size());
  for (std::size_t len = 0; len < usable; ++len) {
    column.clear();
    for (const auto& c : curves) {
      if (c.size() > len) column.push_back(c[len]);
    }
    const auto rank = static_cast<std::size_t>(std::ceil(quantile * static_cast<double>(column.size())));
    const std::size_t index = rank == 0 ? 0 : rank - 1;
    std::nth_element(column.begin(), column.begin() + static_cast<std::ptrdiff_t>(index), column.end());
    cutoffs_[len] = column[index];
  }
}

double NullCalibration::cutoff(std::size_t length) const {
  if (cutoffs_.empty()) throw ConfigError("null calibration is empty");
  if (length == 0) throw EmptyInput("cutoff requested for length 0");
  return cutoffs_[std::min(length, cutoffs_.size()) - 1];
}

nlohmann::json NullCalibration::to_json() const {
  return nlohmann::json{{"quantile", quantile_}, {"samples", samples_}, {"cutoffs", cutoffs_}};
}

}  // namespace wmlab
