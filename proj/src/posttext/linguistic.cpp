#include "wmlab/posttext/linguistic.hpp"

#include <cmath>

#include "wmlab/common/error.hpp"
#include "wmlab/text/segment.hpp"
#include "wmlab/text/unicode.hpp"

namespace wmlab::posttext {
namespace {

void check_params(const LinguisticParams& p) {
  if (!p.synonym_table || p.synonym_table->empty()) throw ConfigError("synonym table is empty");
  if (!p.encoder) throw ConfigError("linguistic scheme needs a word encoder");
}

}  // namespace

WordEncoder keyed_word_encoder(const keyed::SecretKey& key) {
  auto prf = std::make_shared<const keyed::KeyedPrf>(key);
  return [prf](std::string_view word) {
    const auto* bytes = reinterpret_cast<const std::uint8_t*>(word.data());
    return static_cast<int>(prf->hash_bytes(keyed::PrfDomain::kWordBit, {bytes, word.size()}) & 1U);
  };
}

double binomial_z(std::size_t ones, std::size_t n) {
  if (n == 0) throw EmptyInput("binomial z over zero words");
  const double nn = static_cast<double>(n);
  return (static_cast<double>(ones) - 0.5 * nn) / std::sqrt(0.25 * nn);
}

std::string linguistic_inject(std::string_view text, const LinguisticParams& p) {
  check_params(p);
  const text::SegmentedText seg(text);
  std::string out;
  out.reserve(text.size());
  for (const auto& span : seg.spans) {
    const std::string word = text::encode_utf8(seg.view(span));
    if (span.kind != text::SpanKind::kWord) {
      out += word;
      continue;
    }
    const std::string lower = text::to_lower_utf8(word);
    const auto* cands = p.synonym_table->find(lower);
    if (cands == nullptr || p.encoder(lower) == 1) {
      out += word;
      continue;
    }
    const SynonymCandidate* chosen = nullptr;
    const std::size_t limit = std::min(cands->size(), p.max_candidates);
    for (std::size_t i = 0; i < limit; ++i) {
      const auto& c = (*cands)[i];
      if (c.similarity >= p.similarity_threshold && p.encoder(text::to_lower_utf8(c.word)) == 1) {
        chosen = &c;
        break;
      }
    }
    out += chosen ? match_case(word, chosen->word) : word;
  }
  return out;
}

std::vector<int> linguistic_bits(std::string_view text, const LinguisticParams& p) {
  check_params(p);
  const text::SegmentedText seg(text);
  std::vector<int> bits;
  for (const auto& span : seg.spans) {
    if (span.kind != text::SpanKind::kWord) continue;
    const std::string lower = text::encode_utf8(text::to_lower(seg.view(span)));
    if (p.synonym_table->contains(lower)) bits.push_back(p.encoder(lower));
  }
  return bits;
}

Linguistic::Linguistic(LinguisticParams params) : params_(std::move(params)) {
  check_params(params_);
  if (params_.max_candidates == 0) throw ConfigError("max_candidates must be at least 1");
}

std::string Linguistic::inject(std::string_view text, std::uint64_t seed) const {
  auto p = params_;
  p.rng_seed = seed;
  return linguistic_inject(text, p);
}

std::vector<double> Linguistic::prefix_statistics(std::string_view text) const {
  const auto bits = linguistic_bits(text, params_);
  std::vector<double> curve(bits.size());
  std::size_t ones = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    ones += static_cast<std::size_t>(bits[i]);
    curve[i] = binomial_z(ones, i + 1);
  }
  return curve;
}

DetectionReport Linguistic::detect(std::string_view text, const NullCalibration* cal) const {
  if (cal == nullptr || cal->empty()) throw ConfigError("linguistic detection needs a calibration");
  const auto bits = linguistic_bits(text, params_);
  if (bits.empty()) return DetectionReport::undecidable(id_, "no encodable words");
  const std::size_t length = std::min(bits.size(), cal->max_length());
  std::size_t ones = 0;
  for (std::size_t i = 0; i < length; ++i) ones += static_cast<std::size_t>(bits[i]);
  auto report = DetectionReport::decided(id_, binomial_z(ones, length), cal->cutoff(length), length);
  report.per_token_evidence.assign(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(length));
  return report;
}

}  // namespace wmlab::posttext
