#include "wmlab/pretext/scheme.hpp"

#include <algorithm>

#include "wmlab/common/error.hpp"

namespace wmlab::pretext {

std::size_t detection_length(std::span<const TokenId> tokens, const NullCalibration& cal) {
  if (tokens.empty()) throw EmptyInput("cannot detect on an empty token sequence");
  return std::min(tokens.size(), cal.max_length());
}

DetectionReport PretextScheme::detect(std::span<const TokenId> tokens,
                                      const NullCalibration& cal) const {
  const std::size_t length = detection_length(tokens, cal);
  const auto head = tokens.first(length);
  const auto curve = prefix_statistics(head);
  auto report = DetectionReport::decided(id(), curve.back(), cal.cutoff(length), length);
  report.per_token_evidence = evidence(head);
  return report;
}

}  // namespace wmlab::pretext
