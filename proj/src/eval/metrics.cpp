#include "wmlab/eval/metrics.hpp"

#include <algorithm>
#include <string>

#include "wmlab/common/error.hpp"

namespace wmlab::eval {
namespace {

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw Error(std::string(what) + " must be in [0,1]");
}

}  // namespace

double quality_combine(double q_clean, double q_attack) {
  check_unit(q_clean, "q_clean");
  check_unit(q_attack, "q_attack");
  const double ratio = q_clean == 0.0 ? 0.0 : std::clamp(q_attack / q_clean, 0.0, 1.0);
  return 0.5 * q_clean + 0.5 * ratio;
}

double watermark_rate(std::span<const DetectionReport> reports) {
  if (reports.empty()) throw EmptyInput("watermark rate over no reports");
  std::size_t hits = 0;
  for (const auto& r : reports) {
    if (r.status == DetectionStatus::kDecided && r.decision) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(reports.size());
}

double robustness(double quality, double rate) {
  check_unit(quality, "Q");
  check_unit(rate, "W");
  return 0.5 * quality + 0.5 * rate;
}

double robustness_mean(std::span<const double> scores) {
  if (scores.empty()) throw EmptyInput("robustness mean over no scores");
  double sum = 0.0;
  for (double s : scores) sum += s;
  return sum / static_cast<double>(scores.size());
}

MetricBundle MetricBundle::from(double q_clean, double q_attack, double rate) {
  MetricBundle m;
  m.q_clean = q_clean;
  m.q_attack = q_attack;
  m.quality = quality_combine(q_clean, q_attack);
  m.rate = rate;
  m.robust = robustness(m.quality, rate);
  return m;
}

}  // namespace wmlab::eval
