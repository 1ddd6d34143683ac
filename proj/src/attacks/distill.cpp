#include "wmlab/attacks/distill.hpp"

#include <algorithm>
#include <map>

#include "wmlab/common/error.hpp"
#include "wmlab/common/seed.hpp"

namespace wmlab::attacks {

std::vector<std::pair<text::TokenId, double>> fit_counts(std::span<const double> target,
                                                         std::span<const text::TokenId> support,
                                                         double alpha) {
  // p(w) = (c(w) + a) / (T + a|S|). With scale S = a / min p the least
  // likely token gets count 0 and T + a|S| = S.
  double min_p = 1.0;
  for (text::TokenId id : support) min_p = std::min(min_p, target[id]);
  if (!(min_p > 0.0)) throw InvalidDistribution("target gives zero mass to a support token");
  const double scale = alpha / min_p;
  std::vector<std::pair<text::TokenId, double>> counts;
  counts.reserve(support.size());
  for (text::TokenId id : support) {
    const double c = std::max(0.0, target[id] * scale - alpha);
    if (c > 0.0) counts.emplace_back(id, c);
  }
  return counts;
}

std::shared_ptr<const lm::NgramModel> distill(const lm::LanguageModel& teacher,
                                              const WatermarkInstaller& watermark,
                                              std::span<const std::vector<text::TokenId>> prompts,
                                              const DistillOptions& options) {
  const auto* ngram = dynamic_cast<const lm::NgramModel*>(&teacher);
  if (ngram == nullptr) {
    throw Unsupported("distill needs an n-gram teacher, got backend '" +
                      std::string(teacher.backend_id()) + "'");
  }
  if (prompts.empty()) throw ConfigError("distill needs at least one prompt");
  lm::NgramCounts counts = ngram->counts();

  // averaged watermarked distributions per visited context, ordered for determinism
  std::map<std::vector<text::TokenId>, std::pair<std::vector<double>, std::size_t>> visited;

  for (std::size_t q = 0; q < options.prompts; ++q) {
    lm::GenerationConfig cfg;
    cfg.max_tokens = options.max_tokens;
    cfg.prompt = prompts[q % prompts.size()];
    cfg.seed = derive_seed(options.seed, {"distill", std::to_string(q)});
    if (watermark) watermark(cfg);

    if (options.mode == DistillMode::kLogitMatch) {
      auto inner = cfg.logit_transform;
      const auto prompt = cfg.prompt;
      cfg.logit_transform = [&, inner, prompt](std::span<const text::TokenId> generated,
                                               lm::NextTokenDistribution& probs) {
        if (inner) inner(generated, probs);
        std::vector<text::TokenId> history(prompt);
        history.insert(history.end(), generated.begin(), generated.end());
        auto& slot = visited[counts.key(history)];
        if (slot.first.empty()) slot.first.assign(probs.size(), 0.0);
        for (std::size_t i = 0; i < probs.size(); ++i) slot.first[i] += probs[i];
        ++slot.second;
      };
      lm::generate(teacher, cfg);
    } else {
      const auto out = lm::generate(teacher, cfg);
      std::vector<text::TokenId> doc(cfg.prompt);
      doc.insert(doc.end(), out.ids.begin(), out.ids.end());
      // only the answer's continuations are counted, with the prompt as context
      for (std::size_t i = cfg.prompt.size(); i < doc.size(); ++i) {
        counts.add(std::span<const text::TokenId>(doc).first(i), doc[i], 1.0);
      }
    }
  }

  for (auto& [key, slot] : visited) {
    auto& [sum, n] = slot;
    for (double& v : sum) v /= static_cast<double>(n);
    counts.set(key, fit_counts(sum, ngram->support(), ngram->alpha()));
  }
  return std::make_shared<const lm::NgramModel>(
      ngram->shared_vocab(), std::move(counts),
      std::vector<text::TokenId>(ngram->support().begin(), ngram->support().end()), ngram->alpha());
}

}  // namespace wmlab::attacks
