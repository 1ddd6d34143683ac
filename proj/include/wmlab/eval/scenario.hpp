#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wmlab/attacks/attack.hpp"
#include "wmlab/common/detection.hpp"
#include "wmlab/eval/lab.hpp"
#include "wmlab/eval/metrics.hpp"

namespace wmlab::eval {

/// Wall-clock seconds per stage, summed over the prompts.
struct StageTimings {
  double inject_s = 0.0;
  double attack_s = 0.0;
  double detect_s = 0.0;
};

struct EvalRecord {
  std::string prompt_id;
  std::string clean_hash;
  std::string attacked_hash;
  std::string clean_text;     // filled only with evaluation.keep_texts
  std::string attacked_text;  // likewise
  double q_clean = 0.0;
  double q_attack = 0.0;
  DetectionReport detection;
};

enum class ScenarioStatus { kOk, kSkipped, kInvalid };

std::string_view status_name(ScenarioStatus s);

struct ScenarioResult {
  std::string scheme;
  std::vector<attacks::AttackSpec> chain;
  ScenarioStatus status = ScenarioStatus::kOk;
  std::string note;  // why a scenario was skipped or invalid
  MetricBundle metrics;
  StageTimings timing;
  std::uint64_t seed = 0;
  std::vector<EvalRecord> records;

  /// "none", or attack labels joined by '>' in application order.
  std::string chain_label() const;
};

/// Generates watermarked responses, applies the chain in order, detects and
/// grades. Emoji and Distill replace the generation step and so may only
/// open a chain. Throws ScenarioSkipped when a chain element does not apply
/// to the scheme; attack or judge failures yield an invalid result.
ScenarioResult run_scenario(Lab& lab, const std::string& scheme, std::span<const attacks::AttackSpec> chain);

/// run_scenario that records skipped scenarios instead of throwing.
ScenarioResult try_scenario(Lab& lab, const std::string& scheme, std::span<const attacks::AttackSpec> chain);

/// For each scheme: every single attack, then (with `pairs`) every ordered
/// pair including an attack followed by itself. Scheme-major, in the order
/// given; pairs are first-attack-major.
std::vector<ScenarioResult> run_matrix(Lab& lab, std::span<const std::string> schemes,
                                       std::span<const attacks::AttackId> attack_ids, bool pairs);

/// Single-attack scenarios over the grid strengths of the config.
std::vector<ScenarioResult> run_grid(Lab& lab);

/// Detection outcome on watermarked and on unwatermarked responses.
struct RoundTrip {
  std::string scheme;
  std::size_t prompts = 0;
  double rate = 0.0;                 // W without attack
  double false_positive_rate = 0.0;  // positive decisions on unwatermarked responses
  double q_clean = 0.0;
  std::size_t calibrated_length = 0;  // 0 for schemes without calibration
  ScenarioResult baseline;            // the unattacked scenario
};

RoundTrip run_roundtrip(Lab& lab, const std::string& scheme);

/// Fraction of the scheme's clean watermarked responses the configured
/// classifier flags.
double run_imperceptibility(Lab& lab, const std::string& scheme);

}  // namespace wmlab::eval
