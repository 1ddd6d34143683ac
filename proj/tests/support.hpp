#pragma once

#include <cmath>
#include <filesystem>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "wmlab/lm/fixture_model.hpp"
#include "wmlab/lm/ngram.hpp"
#include "wmlab/text/vocabulary.hpp"

namespace testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(WMLAB_DATA_DIR) / name;
}

inline const std::vector<std::string>& corpus() {
  static const auto docs = wmlab::lm::load_corpus(data_path("corpus.txt").string());
  return docs;
}

/// Agreement to a few units in the last place, with a tiny absolute floor
/// for values that should be exactly zero.
inline bool close_ulps(double actual, double expected, double ulps = 4.0) {
  const double eps = std::numeric_limits<double>::epsilon();
  return std::fabs(actual - expected) <= ulps * eps * std::fabs(expected) + 1e-14;
}

/// Vocabulary of single-letter tokens "a", "b", ... .
inline std::shared_ptr<const wmlab::text::Vocabulary> letter_vocab(std::size_t n) {
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < n; ++i) {
    // Two-letter names once the alphabet runs out keep entries unique.
    std::string t(1, static_cast<char>('a' + i % 26));
    if (i >= 26) t += static_cast<char>('a' + i / 26 - 1);
    tokens.push_back(t);
  }
  return std::make_shared<const wmlab::text::Vocabulary>(std::move(tokens));
}

/// Fixture model with the same fixed distribution at every step.
inline std::shared_ptr<const wmlab::lm::FixtureModel> fixed_model(
    std::shared_ptr<const wmlab::text::Vocabulary> vocab, std::vector<double> probs) {
  return std::make_shared<const wmlab::lm::FixtureModel>(
      vocab, [probs](std::span<const wmlab::text::TokenId>) { return probs; });
}

/// Mildly peaked distribution over n tokens, so sampling has entropy but
/// is not uniform.
inline std::vector<double> skewed(std::size_t n) {
  std::vector<double> p(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += p[i] = 1.0 / static_cast<double>(i + 2);
  for (double& v : p) v /= sum;
  return p;
}

}  // namespace testing
