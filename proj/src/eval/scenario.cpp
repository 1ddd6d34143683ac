#include "wmlab/eval/scenario.hpp"

#include <chrono>

#include "wmlab/common/error.hpp"
#include "wmlab/common/seed.hpp"
#include "wmlab/eval/imperceptibility.hpp"

namespace wmlab::eval {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double mean_grade(std::span<const Response> responses) {
  double sum = 0.0;
  for (const auto& r : responses) sum += r.grade;
  return responses.empty() ? 0.0 : sum / static_cast<double>(responses.size());
}

void check_chain(const std::string& scheme, std::span<const attacks::AttackSpec> chain) {
  scheme_index(scheme);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto name = std::string(attacks::attack_name(chain[i].id));
    if (!attacks::attack_applicable(chain[i].id, scheme)) {
      throw ScenarioSkipped(name + " does not apply to " + scheme);
    }
    if (i > 0 && attacks::is_pretext_attack(chain[i].id)) {
      throw ScenarioSkipped(name + " acts during generation and can only come first");
    }
    chain[i].validate();
  }
}

}  // namespace

std::string_view status_name(ScenarioStatus s) {
  switch (s) {
    case ScenarioStatus::kOk: return "ok";
    case ScenarioStatus::kSkipped: return "skipped";
    case ScenarioStatus::kInvalid: return "invalid";
  }
  return "?";
}

std::string ScenarioResult::chain_label() const {
  if (chain.empty()) return "none";
  std::string out;
  for (const auto& spec : chain) {
    if (!out.empty()) out += '>';
    out += spec.label();
  }
  return out;
}

ScenarioResult run_scenario(Lab& lab, const std::string& scheme, std::span<const attacks::AttackSpec> chain) {
  check_chain(scheme, chain);
  ScenarioResult result;
  result.scheme = scheme;
  result.chain.assign(chain.begin(), chain.end());
  if (!chain.empty() && chain.front().id == attacks::AttackId::kDistill) {
    result.chain.front().distill_mode = lab.distill_mode(scheme);
  }
  result.seed = derive_seed(lab.seed(), {"scenario", scheme, result.chain_label()});

  const auto& s = lab.scheme(scheme);
  const auto* cal = lab.calibration(scheme);
  const auto& clean = lab.clean_responses(scheme);
  const bool keep = lab.config().evaluation.keep_texts;

  std::span<const Response> start = clean;
  std::size_t first_text_attack = 0;
  if (!chain.empty() && chain.front().id == attacks::AttackId::kEmoji) {
    start = lab.emoji_responses(scheme);
    first_text_attack = 1;
  } else if (!chain.empty() && chain.front().id == attacks::AttackId::kDistill) {
    start = lab.distill_responses(scheme);
    first_text_attack = 1;
  }

  std::vector<DetectionReport> reports;
  reports.reserve(clean.size());
  double q_attack_sum = 0.0;
  try {
    for (std::size_t i = 0; i < clean.size(); ++i) {
      const auto& pid = lab.prompts().items[i].id;
      result.timing.inject_s += start[i].seconds;
      std::string text = start[i].text;

      const auto attack_start = Clock::now();
      for (std::size_t k = first_text_attack; k < chain.size(); ++k) {
        auto spec = chain[k];
        spec.seed = derive_seed(lab.seed(), {pid, "attack", std::to_string(k), attacks::attack_name(spec.id)});
        text = attacks::apply_text_attack(text, spec, lab.resources());
      }
      result.timing.attack_s += seconds_since(attack_start);

      const auto detect_start = Clock::now();
      auto report = s.detect(text, lab.vocab(), cal);
      result.timing.detect_s += seconds_since(detect_start);

      const double q = chain.empty() ? clean[i].grade
                       : first_text_attack == chain.size() ? start[i].grade
                                                           : lab.grade(i, text);
      q_attack_sum += q;

      EvalRecord rec;
      rec.prompt_id = pid;
      rec.clean_hash = text_hash(clean[i].text);
      rec.attacked_hash = text_hash(text);
      if (keep) {
        rec.clean_text = clean[i].text;
        rec.attacked_text = text;
      }
      rec.q_clean = clean[i].grade;
      rec.q_attack = q;
      report.per_token_evidence.clear();
      rec.detection = report;
      reports.push_back(std::move(report));
      result.records.push_back(std::move(rec));
    }
  } catch (const AttackFailed& e) {
    result.status = ScenarioStatus::kInvalid;
    result.note = std::string("attack failed: ") + e.what();
    return result;
  } catch (const JudgeFailed& e) {
    result.status = ScenarioStatus::kInvalid;
    result.note = std::string("judge failed: ") + e.what();
    return result;
  }

  const double q_attack = q_attack_sum / static_cast<double>(clean.size());
  result.metrics = MetricBundle::from(mean_grade(clean), q_attack, watermark_rate(reports));
  return result;
}

ScenarioResult try_scenario(Lab& lab, const std::string& scheme, std::span<const attacks::AttackSpec> chain) {
  try {
    return run_scenario(lab, scheme, chain);
  } catch (const ScenarioSkipped& e) {
    ScenarioResult r;
    r.scheme = scheme;
    r.chain.assign(chain.begin(), chain.end());
    r.status = ScenarioStatus::kSkipped;
    r.note = e.what();
    r.seed = derive_seed(lab.seed(), {"scenario", scheme, r.chain_label()});
    return r;
  }
}

std::vector<ScenarioResult> run_matrix(Lab& lab, std::span<const std::string> schemes,
                                       std::span<const attacks::AttackId> attack_ids, bool pairs) {
  std::vector<ScenarioResult> out;
  for (const auto& scheme : schemes) {
    for (auto a : attack_ids) {
      const attacks::AttackSpec chain[] = {lab.attack_spec(a)};
      out.push_back(try_scenario(lab, scheme, chain));
    }
    if (!pairs) continue;
    for (auto a : attack_ids) {
      for (auto b : attack_ids) {
        const attacks::AttackSpec chain[] = {lab.attack_spec(a), lab.attack_spec(b)};
        out.push_back(try_scenario(lab, scheme, chain));
      }
    }
  }
  return out;
}

std::vector<ScenarioResult> run_grid(Lab& lab) {
  const auto& grid = lab.config().grid;
  std::vector<ScenarioResult> out;
  for (const auto& scheme : grid.schemes) {
    for (const auto& name : grid.attacks) {
      const auto id = attacks::attack_from_name(name);
      for (double strength : grid.strengths) {
        const attacks::AttackSpec chain[] = {lab.attack_spec(id, strength)};
        out.push_back(try_scenario(lab, scheme, chain));
      }
    }
  }
  return out;
}

RoundTrip run_roundtrip(Lab& lab, const std::string& scheme) {
  RoundTrip rt;
  rt.scheme = scheme;
  rt.baseline = run_scenario(lab, scheme, {});
  rt.prompts = rt.baseline.records.size();
  rt.rate = rt.baseline.metrics.rate;
  rt.q_clean = rt.baseline.metrics.q_clean;
  const auto& s = lab.scheme(scheme);
  const auto* cal = lab.calibration(scheme);
  rt.calibrated_length = cal ? cal->max_length() : 0;
  std::vector<DetectionReport> null_reports;
  for (const auto& r : lab.plain_responses()) null_reports.push_back(s.detect(r.text, lab.vocab(), cal));
  rt.false_positive_rate = watermark_rate(null_reports);
  return rt;
}

double run_imperceptibility(Lab& lab, const std::string& scheme) {
  const auto& cfg = lab.config().imperceptibility;
  std::vector<std::string> texts;
  for (const auto& r : lab.clean_responses(scheme)) texts.push_back(r.text);
  if (!cfg.command.empty()) return imperceptibility_probe(texts, ExternalClassifier(cfg.command));
  const HeuristicClassifier classifier(lab.null_pool(), cfg.rare_max_count, cfg.z_threshold);
  return imperceptibility_probe(texts, classifier);
}

}  // namespace wmlab::eval
