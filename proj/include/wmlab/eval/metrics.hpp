#pragma once

#include <span>

#include "wmlab/common/detection.hpp"

namespace wmlab::eval {

/// 0.5 q_clean + 0.5 clamp(q_attack / q_clean, 0, 1); the ratio is 0 when
/// q_clean is 0. Both grades must lie in [0, 1].
double quality_combine(double q_clean, double q_attack);

/// Fraction of reports with a positive decision; undecidable reports count
/// as negatives. Throws EmptyInput for no reports.
double watermark_rate(std::span<const DetectionReport> reports);

/// 0.5 Q + 0.5 W.
double robustness(double quality, double rate);

/// Mean of per-attack robustness scores. Throws EmptyInput when empty.
double robustness_mean(std::span<const double> scores);

struct MetricBundle {
  double q_clean = 0.0;
  double q_attack = 0.0;
  double quality = 0.0;  // Q
  double rate = 0.0;     // W
  double robust = 0.0;   // R

  static MetricBundle from(double q_clean, double q_attack, double rate);
};

}  // namespace wmlab::eval
