#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "wmlab/attacks/attack.hpp"
#include "wmlab/common/calibration.hpp"
#include "wmlab/eval/config.hpp"
#include "wmlab/eval/dataset.hpp"
#include "wmlab/eval/judge.hpp"
#include "wmlab/eval/schemes.hpp"
#include "wmlab/lm/ngram.hpp"

namespace wmlab::eval {

/// One response to one prompt with its judge grade.
struct Response {
  std::string text;
  double grade = 0.0;
  double seconds = 0.0;  // time spent producing it (generation or injection)
};

/// Shared state of an evaluation run: data, the toy model, schemes, their
/// null calibrations, and cached responses. Everything is derived from the
/// config and its master seed. Accessors are safe to call from several
/// threads; caches are filled once.
class Lab {
 public:
  explicit Lab(LabConfig config);

  const LabConfig& config() const { return config_; }
  std::uint64_t seed() const { return config_.seed; }
  const text::Vocabulary& vocab() const { return *vocab_; }
  std::shared_ptr<const text::Vocabulary> shared_vocab() const { return vocab_; }
  const lm::NgramModel& model() const { return *model_; }
  std::shared_ptr<const lm::NgramModel> shared_model() const { return model_; }
  /// The evaluation prompts (first evaluation.prompts items).
  const PromptDataset& prompts() const { return eval_prompts_; }
  const PromptDataset& all_prompts() const { return all_prompts_; }
  const std::vector<std::vector<text::TokenId>>& prompt_tokens() const { return prompt_tokens_; }
  const attacks::AttackResources& resources() const { return resources_; }
  const QualityJudge& judge() const { return *judge_; }

  /// Schemes named in evaluation.schemes, or all of them.
  std::vector<std::string> scheme_names() const;
  /// Attacks named in evaluation.attacks, or all of them.
  std::vector<attacks::AttackId> attack_ids() const;
  /// Default-strength spec for an attack, seeded later per prompt.
  attacks::AttackSpec attack_spec(attacks::AttackId id) const;
  /// Spec at a grid strength: p for misspelling/typo/synonym/token,
  /// (s, s, 0) for modify.
  attacks::AttackSpec attack_spec(attacks::AttackId id, double strength) const;

  const Scheme& scheme(const std::string& name);
  /// Null calibration of a scheme, or null when it needs none.
  const NullCalibration* calibration(const std::string& name);

  /// Unwatermarked texts of length pool_factor * max_tokens, answering the
  /// evaluation prompts in turn with fresh seeds. Used for calibration and
  /// as the imperceptibility reference.
  const std::vector<std::string>& null_pool();
  /// Unwatermarked responses to the evaluation prompts (graded).
  const std::vector<Response>& plain_responses();
  /// Watermarked, unattacked responses (graded).
  const std::vector<Response>& clean_responses(const std::string& scheme);
  /// Watermarked responses generated under the emoji attack, emoji removed.
  const std::vector<Response>& emoji_responses(const std::string& scheme);
  /// Responses of a student distilled from the watermarked model.
  const std::vector<Response>& distill_responses(const std::string& scheme);
  std::shared_ptr<const lm::NgramModel> distilled_model(const std::string& scheme);
  /// Configured mode for kgw and unigram; sample-finetune for the
  /// sampler-based schemes, whose distributions carry no watermark.
  attacks::DistillMode distill_mode(const std::string& scheme) const;

  std::uint64_t prompt_seed(std::size_t prompt, std::string_view stage) const;
  /// Generation config for prompt i with no watermark installed.
  lm::GenerationConfig generation_config(std::size_t prompt) const;

  /// Judge grade of a response to evaluation prompt i.
  double grade(std::size_t prompt, std::string_view response) const;

 private:
  std::vector<Response> generate_all(const std::function<void(lm::GenerationConfig&)>& setup,
                                     const lm::LanguageModel& model, bool emoji);

  LabConfig config_;
  std::shared_ptr<const text::Vocabulary> vocab_;
  std::shared_ptr<const lm::NgramModel> model_;
  PromptDataset all_prompts_;
  PromptDataset eval_prompts_;
  std::vector<std::vector<text::TokenId>> prompt_tokens_;
  attacks::AttackResources resources_;
  std::unique_ptr<QualityJudge> judge_;

  std::recursive_mutex mutex_;
  std::map<std::string, std::shared_ptr<const Scheme>> schemes_;
  std::map<std::string, std::unique_ptr<NullCalibration>> calibrations_;
  std::vector<std::string> null_pool_;
  bool have_pool_ = false;
  std::vector<Response> plain_;
  bool have_plain_ = false;
  std::map<std::string, std::vector<Response>> clean_, emoji_, distill_;
  std::map<std::string, std::shared_ptr<const lm::NgramModel>> students_;
};

/// 64-bit FNV-1a of the text, as 16 hex digits; identifies texts in records.
std::string text_hash(std::string_view text);

}  // namespace wmlab::eval
