#include "wmlab/eval/imperceptibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <regex>

#include "wmlab/common/error.hpp"
#include "wmlab/common/subprocess.hpp"
#include "wmlab/text/segment.hpp"
#include "wmlab/text/unicode.hpp"

namespace wmlab::eval {
namespace {

template <typename F>
void for_each_word(std::string_view text, F&& f) {
  const text::SegmentedText seg(text);
  for (const auto& s : seg.spans) {
    if (s.kind == text::SpanKind::kWord) f(text::encode_utf8(text::to_lower(seg.view(s))));
  }
}

}  // namespace

bool is_stego_whitespace(char32_t cp) {
  return cp == 0x00A0 || cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200D) || cp == 0x2028 ||
         cp == 0x2029 || cp == 0x202F || cp == 0x205F || cp == 0x2060 || cp == 0x3000 || cp == 0xFEFF;
}

HeuristicClassifier::HeuristicClassifier(std::span<const std::string> reference,
                                         std::size_t rare_max_count, double z_threshold)
    : rare_max_count_(rare_max_count), z_threshold_(z_threshold) {
  if (reference.empty()) throw EmptyInput("imperceptibility heuristic needs reference texts");
  std::size_t total = 0;
  for (const auto& t : reference) {
    for_each_word(t, [&](std::string w) {
      ++counts_[std::move(w)];
      ++total;
    });
  }
  std::size_t rare = 0;
  for (const auto& [w, n] : counts_) {
    if (n <= rare_max_count_) rare += n;
  }
  // at least one rare word in the whole reference, so the rate is never 0
  rare_rate_ = static_cast<double>(std::max<std::size_t>(rare, 1)) / static_cast<double>(std::max<std::size_t>(total, 1));
}

double HeuristicClassifier::rare_word_z(std::string_view text) const {
  std::size_t n = 0, rare = 0;
  for_each_word(text, [&](const std::string& w) {
    ++n;
    const auto it = counts_.find(w);
    if (it == counts_.end() || it->second <= rare_max_count_) ++rare;
  });
  if (n == 0) return 0.0;
  const double mean = static_cast<double>(n) * rare_rate_;
  return (static_cast<double>(rare) - mean) / std::sqrt(mean * (1.0 - rare_rate_));
}

bool HeuristicClassifier::flags(std::string_view text) const {
  for (char32_t c : text::decode_utf8(text)) {
    if (is_stego_whitespace(c)) return true;
  }
  return rare_word_z(text) > z_threshold_;
}

ExternalClassifier::ExternalClassifier(std::string command, std::chrono::milliseconds timeout)
    : command_(std::move(command)), timeout_(timeout) {
  if (command_.empty()) throw ConfigError("external classifier needs a command");
}

bool ExternalClassifier::flags(std::string_view text) const {
  const auto result = run_command(command_, text, timeout_);
  if (!result.ok()) throw Error("imperceptibility classifier failed");
  static const std::regex number(R"([-+]?(?:\d+\.?\d*|\.\d+))");
  std::smatch m;
  if (!std::regex_search(result.out, m, number)) throw Error("imperceptibility classifier gave no score");
  return std::strtod(m.str().c_str(), nullptr) >= 0.5;
}

double imperceptibility_probe(std::span<const std::string> texts, const WatermarkClassifier& classifier) {
  if (texts.empty()) throw EmptyInput("imperceptibility probe needs at least one text");
  const auto flagged = std::count_if(texts.begin(), texts.end(),
                                     [&](const std::string& t) { return classifier.flags(t); });
  return static_cast<double>(flagged) / static_cast<double>(texts.size());
}

}  // namespace wmlab::eval
