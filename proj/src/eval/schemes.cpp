#include "wmlab/eval/schemes.hpp"

#include <algorithm>

#include "wmlab/common/error.hpp"
#include "wmlab/common/seed.hpp"
#include "wmlab/eval/config.hpp"
#include "wmlab/posttext/format.hpp"
#include "wmlab/posttext/linguistic.hpp"
#include "wmlab/pretext/convert.hpp"
#include "wmlab/pretext/exponential.hpp"
#include "wmlab/pretext/inverse.hpp"
#include "wmlab/pretext/kgw.hpp"
#include "wmlab/text/tokenizer.hpp"

namespace wmlab::eval {

std::size_t scheme_index(std::string_view name) {
  const auto it = std::find(kAllSchemes.begin(), kAllSchemes.end(), name);
  if (it == kAllSchemes.end()) throw ConfigError("unknown scheme '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - kAllSchemes.begin());
}

bool is_pretext_scheme(std::string_view name) { return scheme_index(name) < 5; }

Scheme::Scheme(std::shared_ptr<const pretext::PretextScheme> scheme) : pre_(std::move(scheme)) {}
Scheme::Scheme(std::shared_ptr<const posttext::PosttextScheme> scheme) : post_(std::move(scheme)) {}

const std::string& Scheme::id() const { return pre_ ? pre_->id() : post_->id(); }

void Scheme::install(lm::GenerationConfig& cfg) const {
  if (pre_) pre_->install(cfg);
}

std::string Scheme::finish(std::string_view generated, std::uint64_t seed) const {
  return post_ ? post_->inject(generated, seed) : std::string(generated);
}

bool Scheme::needs_calibration() const { return pre_ != nullptr || post_->calibrated(); }

std::vector<double> Scheme::null_curve(std::string_view text, const text::Vocabulary& vocab) const {
  if (post_) return post_->prefix_statistics(text);
  const auto tokens = text::tokenize_lenient(text, vocab);
  if (tokens.empty()) return {};
  return pre_->prefix_statistics(tokens.ids);
}

DetectionReport Scheme::detect(std::string_view text, const text::Vocabulary& vocab,
                               const NullCalibration* cal) const {
  if (post_) return post_->detect(text, cal);
  if (cal == nullptr || cal->empty()) throw ConfigError("scheme '" + id() + "' is not calibrated");
  const auto tokens = text::tokenize_lenient(text, vocab);
  if (tokens.empty()) return DetectionReport::undecidable(id(), "no tokens");
  return pre_->detect(tokens.ids, *cal);
}

namespace {

keyed::SecretKey key_for(std::string_view name, const std::string& hex, std::uint64_t master) {
  if (!hex.empty()) return keyed::SecretKey::from_hex(hex);
  return keyed::SecretKey::from_seed(derive_seed(master, {"scheme-key", name}));
}

}  // namespace

std::shared_ptr<const Scheme> build_scheme(std::string_view name, const LabConfig& c,
                                           std::size_t vocab_size,
                                           std::shared_ptr<const posttext::SynonymTable> synonyms) {
  const std::uint64_t inject_seed = derive_seed(c.seed, {"inject", name});
  switch (scheme_index(name)) {
    case 0:
    case 1: {
      const bool unigram = name == "unigram";
      const auto& t = unigram ? c.unigram : c.kgw;
      pretext::KgwParams p{t.gamma, t.delta, key_for(name, t.key, c.seed), t.prefix_h, unigram};
      return std::make_shared<Scheme>(std::make_shared<pretext::Kgw>(std::move(p), vocab_size));
    }
    case 2:
      return std::make_shared<Scheme>(std::make_shared<pretext::Exponential>(
          pretext::ExpParams{key_for(name, c.exponential.key, c.seed), c.exponential.prefix_h},
          vocab_size));
    case 3: {
      // room for the emoji attack, which triples the generated length
      const std::size_t longest = std::max<std::size_t>(
          3 * c.model.max_tokens,
          static_cast<std::size_t>(c.calibration.pool_factor * static_cast<double>(c.model.max_tokens)));
      const std::size_t m = c.inverse.m != 0 ? c.inverse.m : 4 * longest;
      return std::make_shared<Scheme>(std::make_shared<pretext::Inverse>(
          pretext::InvParams{key_for(name, c.inverse.key, c.seed), m, c.inverse.shifts, c.inverse.band},
          vocab_size));
    }
    case 4:
      return std::make_shared<Scheme>(std::make_shared<pretext::Convert>(
          pretext::ConvertParams{key_for(name, c.convert.key, c.seed), c.convert.prefix_h}, vocab_size));
    case 5:
      return std::make_shared<Scheme>(std::make_shared<posttext::Whitemark>(
          posttext::WhitemarkParams{c.whitemark.mark, c.whitemark.replace_prob, inject_seed}));
    case 6:
      return std::make_shared<Scheme>(std::make_shared<posttext::Unispach>(
          posttext::UnispachParams{c.unispach.codepoints, c.unispach.replace_prob, inject_seed}));
    default: {
      if (!synonyms) throw ConfigError("linguistic scheme needs a synonym table");
      posttext::LinguisticParams p;
      p.synonym_table = std::move(synonyms);
      p.encoder = posttext::keyed_word_encoder(key_for(name, c.linguistic.key, c.seed));
      p.similarity_threshold = c.linguistic.similarity_threshold;
      p.max_candidates = c.linguistic.max_candidates;
      p.rng_seed = inject_seed;
      return std::make_shared<Scheme>(std::make_shared<posttext::Linguistic>(std::move(p)));
    }
  }
}

}  // namespace wmlab::eval
