#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "wmlab/lm/generate.hpp"
#include "wmlab/lm/ngram.hpp"

namespace wmlab::attacks {

enum class DistillMode { kLogitMatch, kSampleFinetune };

struct DistillOptions {
  DistillMode mode = DistillMode::kLogitMatch;
  std::size_t prompts = 500;  // teacher queries; prompts are reused cyclically
  std::size_t max_tokens = 200;
  std::uint64_t seed = 0;
};

/// Installs a watermark scheme's hooks on a generation config.
using WatermarkInstaller = std::function<void(lm::GenerationConfig&)>;

/// Trains a student n-gram model against a watermarked teacher.
///
/// logit-match: the teacher answers the prompts with the watermark on and
/// every watermarked next-token distribution it produces is recorded. For
/// each visited context the student's counts are set so its smoothed
/// distribution equals the average recorded one; other contexts keep the
/// teacher's counts.
///
/// sample-finetune: the teacher's watermarked answers are added to the
/// teacher's counts as extra training documents.
///
/// Throws Unsupported unless the teacher is an n-gram model.
std::shared_ptr<const lm::NgramModel> distill(const lm::LanguageModel& teacher,
                                              const WatermarkInstaller& watermark,
                                              std::span<const std::vector<text::TokenId>> prompts,
                                              const DistillOptions& options);

/// Counts that make an add-alpha model reproduce `target` exactly over
/// `support` (which must carry all of target's mass).
std::vector<std::pair<text::TokenId, double>> fit_counts(std::span<const double> target,
                                                         std::span<const text::TokenId> support,
                                                         double alpha);

}  // namespace wmlab::attacks
