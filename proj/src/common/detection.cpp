#include "wmlab/common/detection.hpp"

#include <utility>

namespace wmlab {

DetectionReport DetectionReport::decided(std::string scheme, double statistic, double cutoff,
                                         std::size_t length) {
  DetectionReport r;
  r.scheme = std::move(scheme);
  r.statistic = statistic;
  r.cutoff = cutoff;
  r.decision = statistic > cutoff;
  r.length = length;
  return r;
}

DetectionReport DetectionReport::undecidable(std::string scheme, std::string why) {
  DetectionReport r;
  r.scheme = std::move(scheme);
  r.status = DetectionStatus::kUndecidable;
  r.note = std::move(why);
  return r;
}

nlohmann::json DetectionReport::to_json() const {
  return nlohmann::json{{"scheme", scheme},
                        {"statistic", statistic},
                        {"cutoff", cutoff},
                        {"decision", decision},
                        {"length", length}};
}

}  // namespace wmlab
