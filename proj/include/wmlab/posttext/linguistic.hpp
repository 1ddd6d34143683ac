#pragma once

#include <functional>
#include <memory>

#include "wmlab/keyed/prf.hpp"
#include "wmlab/posttext/scheme.hpp"
#include "wmlab/posttext/synonym_table.hpp"

namespace wmlab::posttext {

/// Maps a lowercased word to its bit.
using WordEncoder = std::function<int(std::string_view)>;

/// Parity of the keyed hash of the word's UTF-8 bytes.
WordEncoder keyed_word_encoder(const keyed::SecretKey& key);

struct LinguisticParams {
  std::shared_ptr<const SynonymTable> synonym_table;
  WordEncoder encoder;
  double similarity_threshold = 0.5;
  std::size_t max_candidates = 8;
  std::uint64_t rng_seed = 0;
};

/// One-sided binomial z of `ones` bit-1 words among `n` against p = 0.5.
double binomial_z(std::size_t ones, std::size_t n);

/// Replaces every bit-0 table word with its most similar bit-1 candidate
/// (among the first max_candidates, similarity >= threshold), keeping case.
/// Throws ConfigError for an empty table.
std::string linguistic_inject(std::string_view text, const LinguisticParams& p);

/// Bits of the encodable words (lowercased table keys) in text order.
std::vector<int> linguistic_bits(std::string_view text, const LinguisticParams& p);

class Linguistic final : public PosttextScheme {
 public:
  explicit Linguistic(LinguisticParams params);

  const std::string& id() const override { return id_; }
  const LinguisticParams& params() const { return params_; }
  std::string inject(std::string_view text, std::uint64_t seed) const override;
  bool calibrated() const override { return true; }
  std::vector<double> prefix_statistics(std::string_view text) const override;
  /// Undecidable with zero encodable words.
  DetectionReport detect(std::string_view text, const NullCalibration* cal) const override;

 private:
  LinguisticParams params_;
  std::string id_ = "linguistic";
};

}  // namespace wmlab::posttext
