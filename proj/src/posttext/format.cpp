#include "wmlab/posttext/format.hpp"

#include <algorithm>
#include <random>

#include "wmlab/common/error.hpp"
#include "wmlab/common/seed.hpp"
#include "wmlab/text/unicode.hpp"

namespace wmlab::posttext {
namespace {

void check_mark(char32_t cp) {
  if (cp == U' ' || !text::is_whitespace(cp)) {
    throw ConfigError("mark codepoint must be a whitespace character other than U+0020");
  }
}

void check_prob(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("replacement probability must be in [0,1]");
}

}  // namespace

std::string whitemark_inject(std::string_view text, const WhitemarkParams& p) {
  check_mark(p.mark_codepoint);
  check_prob(p.replace_prob);
  std::mt19937_64 rng(p.rng_seed);
  std::u32string out = text::decode_utf8(text);
  for (char32_t& cp : out) {
    if (cp != U' ') continue;
    if (unit_from_bits(rng()) < p.replace_prob) cp = p.mark_codepoint;
  }
  return text::encode_utf8(out);
}

std::string unispach_inject(std::string_view text, const UnispachParams& p) {
  if (p.codepoint_set.empty()) throw ConfigError("UniSpaCh codepoint set is empty");
  for (char32_t cp : p.codepoint_set) check_mark(cp);
  check_prob(p.replace_prob);
  std::mt19937_64 rng(p.rng_seed);
  std::u32string out = text::decode_utf8(text);
  const auto n = static_cast<double>(p.codepoint_set.size());
  for (char32_t& cp : out) {
    if (cp != U' ') continue;
    if (unit_from_bits(rng()) < p.replace_prob) {
      const auto pick = static_cast<std::size_t>(unit_from_bits(rng()) * n);
      cp = p.codepoint_set[pick];
    }
  }
  return text::encode_utf8(out);
}

DetectionReport format_detect(std::string_view scheme, std::string_view text,
                              const std::vector<char32_t>& marks) {
  std::size_t marked = 0, spaces = 0;
  for (char32_t cp : text::decode_utf8(text)) {
    if (cp == U' ') {
      ++spaces;
    } else if (std::find(marks.begin(), marks.end(), cp) != marks.end()) {
      ++marked;
    }
  }
  if (marked + spaces == 0) {
    return DetectionReport::undecidable(std::string(scheme), "text has no space characters");
  }
  const double statistic = static_cast<double>(marked) / static_cast<double>(marked + spaces);
  auto report = DetectionReport::decided(std::string(scheme), statistic, 0.0, marked + spaces);
  if (marked < kMinMarks) {
    report.decision = false;
    report.note = "fewer than " + std::to_string(kMinMarks) + " marks";
  }
  return report;
}

DetectionReport whitemark_detect(std::string_view text, const WhitemarkParams& p) {
  return format_detect("whitemark", text, {p.mark_codepoint});
}

DetectionReport unispach_detect(std::string_view text, const UnispachParams& p) {
  return format_detect("unispach", text, p.codepoint_set);
}

Whitemark::Whitemark(WhitemarkParams params) : params_(params) {
  check_mark(params_.mark_codepoint);
  check_prob(params_.replace_prob);
}

std::string Whitemark::inject(std::string_view text, std::uint64_t seed) const {
  auto p = params_;
  p.rng_seed = seed;
  return whitemark_inject(text, p);
}

DetectionReport Whitemark::detect(std::string_view text, const NullCalibration*) const {
  return whitemark_detect(text, params_);
}

Unispach::Unispach(UnispachParams params) : params_(std::move(params)) {
  if (params_.codepoint_set.empty()) throw ConfigError("UniSpaCh codepoint set is empty");
  for (char32_t cp : params_.codepoint_set) check_mark(cp);
  check_prob(params_.replace_prob);
}

std::string Unispach::inject(std::string_view text, std::uint64_t seed) const {
  auto p = params_;
  p.rng_seed = seed;
  return unispach_inject(text, p);
}

DetectionReport Unispach::detect(std::string_view text, const NullCalibration*) const {
  return unispach_detect(text, params_);
}

}  // namespace wmlab::posttext
