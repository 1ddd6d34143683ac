#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wmlab/posttext/scheme.hpp"

namespace wmlab::posttext {

struct WhitemarkParams {
  char32_t mark_codepoint = 0x2004;
  double replace_prob = 0.6;
  std::uint64_t rng_seed = 0;
};

struct UnispachParams {
  std::vector<char32_t> codepoint_set{0x2000, 0x2001, 0x2004, 0x2006,
                                      0x2007, 0x2008, 0x2009, 0x200A};
  double replace_prob = 0.6;
  std::uint64_t rng_seed = 0;
};

/// Minimum number of marks before a format watermark is reported present.
inline constexpr std::size_t kMinMarks = 3;

std::string whitemark_inject(std::string_view text, const WhitemarkParams& p);
DetectionReport whitemark_detect(std::string_view text, const WhitemarkParams& p);

std::string unispach_inject(std::string_view text, const UnispachParams& p);
DetectionReport unispach_detect(std::string_view text, const UnispachParams& p);

/// Marks / (marks + U+0020 count). Undecidable when both counts are zero.
/// Decision: statistic > 0 with at least kMinMarks marks.
DetectionReport format_detect(std::string_view scheme, std::string_view text,
                              const std::vector<char32_t>& marks);

class Whitemark final : public PosttextScheme {
 public:
  explicit Whitemark(WhitemarkParams params);
  const std::string& id() const override { return id_; }
  std::string inject(std::string_view text, std::uint64_t seed) const override;
  bool calibrated() const override { return false; }
  std::vector<double> prefix_statistics(std::string_view) const override { return {}; }
  DetectionReport detect(std::string_view text, const NullCalibration* cal) const override;

 private:
  WhitemarkParams params_;
  std::string id_ = "whitemark";
};

class Unispach final : public PosttextScheme {
 public:
  explicit Unispach(UnispachParams params);
  const std::string& id() const override { return id_; }
  std::string inject(std::string_view text, std::uint64_t seed) const override;
  bool calibrated() const override { return false; }
  std::vector<double> prefix_statistics(std::string_view) const override { return {}; }
  DetectionReport detect(std::string_view text, const NullCalibration* cal) const override;

 private:
  UnispachParams params_;
  std::string id_ = "unispach";
};

}  // namespace wmlab::posttext
