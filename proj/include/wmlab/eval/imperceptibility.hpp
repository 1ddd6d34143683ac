#pragma once

#include <chrono>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wmlab::eval {

/// Decides whether a text looks watermarked.
class WatermarkClassifier {
 public:
  virtual ~WatermarkClassifier() = default;
  virtual bool flags(std::string_view text) const = 0;
};

/// Codepoints used to hide data in whitespace: the Unicode space
/// separators other than U+0020, zero-width characters and the BOM.
bool is_stego_whitespace(char32_t cp);

/// Flags a text that contains a stego-whitespace codepoint, or whose share
/// of rare words is improbably high: a word is rare when it occurs at most
/// rare_max_count times in the reference texts, and the text is flagged
/// when the one-sided binomial z of its rare-word count against the
/// reference rare-word rate exceeds z_threshold.
class HeuristicClassifier final : public WatermarkClassifier {
 public:
  HeuristicClassifier(std::span<const std::string> reference, std::size_t rare_max_count,
                      double z_threshold);

  bool flags(std::string_view text) const override;
  double rare_word_z(std::string_view text) const;
  double reference_rare_rate() const { return rare_rate_; }

 private:
  std::unordered_map<std::string, std::size_t> counts_;
  std::size_t rare_max_count_;
  double z_threshold_;
  double rare_rate_ = 0.0;
};

/// Runs `command` with the text on stdin; a first number >= 0.5 on stdout
/// flags it. Failures throw Error.
class ExternalClassifier final : public WatermarkClassifier {
 public:
  explicit ExternalClassifier(std::string command,
                              std::chrono::milliseconds timeout = std::chrono::seconds(60));
  bool flags(std::string_view text) const override;

 private:
  std::string command_;
  std::chrono::milliseconds timeout_;
};

/// Fraction of `texts` the classifier flags. Throws EmptyInput for no texts.
double imperceptibility_probe(std::span<const std::string> texts, const WatermarkClassifier& classifier);

}  // namespace wmlab::eval
