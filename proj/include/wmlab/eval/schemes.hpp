#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wmlab/common/calibration.hpp"
#include "wmlab/common/detection.hpp"
#include "wmlab/lm/generate.hpp"
#include "wmlab/posttext/scheme.hpp"
#include "wmlab/posttext/synonym_table.hpp"
#include "wmlab/pretext/scheme.hpp"

namespace wmlab::eval {

struct LabConfig;

inline constexpr std::array<std::string_view, 8> kAllSchemes = {
    "kgw", "unigram", "exponential", "inverse", "convert", "whitemark", "unispach", "linguistic"};

/// Position in kAllSchemes; throws ConfigError for an unknown name.
std::size_t scheme_index(std::string_view name);
bool is_pretext_scheme(std::string_view name);

/// Uniform view over pre-text and post-text schemes for the harness.
class Scheme {
 public:
  explicit Scheme(std::shared_ptr<const pretext::PretextScheme> scheme);
  explicit Scheme(std::shared_ptr<const posttext::PosttextScheme> scheme);

  const std::string& id() const;
  bool is_pretext() const { return pre_ != nullptr; }
  const pretext::PretextScheme* pre() const { return pre_.get(); }
  const posttext::PosttextScheme* post() const { return post_.get(); }

  /// Generation hooks; a no-op for post-text schemes.
  void install(lm::GenerationConfig& cfg) const;
  /// Post-text injection; pre-text schemes return the text unchanged.
  std::string finish(std::string_view generated, std::uint64_t seed) const;

  bool needs_calibration() const;
  /// Null-calibration curve of one unwatermarked text.
  std::vector<double> null_curve(std::string_view text, const text::Vocabulary& vocab) const;

  /// Pre-text detection retokenizes leniently; text with no token left is
  /// undecidable. `cal` may be null only when needs_calibration() is false.
  DetectionReport detect(std::string_view text, const text::Vocabulary& vocab,
                         const NullCalibration* cal) const;

 private:
  std::shared_ptr<const pretext::PretextScheme> pre_;
  std::shared_ptr<const posttext::PosttextScheme> post_;
};

/// Builds a scheme from its config table. A missing key is derived from the
/// master seed and the scheme name.
std::shared_ptr<const Scheme> build_scheme(std::string_view name, const LabConfig& config,
                                           std::size_t vocab_size,
                                           std::shared_ptr<const posttext::SynonymTable> synonyms);

}  // namespace wmlab::eval
