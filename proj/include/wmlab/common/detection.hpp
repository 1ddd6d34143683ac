#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace wmlab {

enum class DetectionStatus { kDecided, kUndecidable };

/// Outcome of running a scheme's detector on one text.
///
/// `decision` is always `statistic > cutoff` for decided reports. An
/// undecidable report (no whitespace, no encodable word, ...) carries
/// decision == false so it counts as a detection failure in W.
struct DetectionReport {
  std::string scheme;
  double statistic = 0.0;
  double cutoff = 0.0;
  bool decision = false;
  std::size_t length = 0;
  DetectionStatus status = DetectionStatus::kDecided;
  std::string note;
  // Scheme-specific secondary statistic, e.g. the unaligned score for Inverse.
  std::optional<double> auxiliary;
  std::vector<double> per_token_evidence;

  static DetectionReport decided(std::string scheme, double statistic, double cutoff,
                                 std::size_t length);
  static DetectionReport undecidable(std::string scheme, std::string why);

  /// {scheme, statistic, cutoff, decision, length}
  nlohmann::json to_json() const;
};

}  // namespace wmlab
