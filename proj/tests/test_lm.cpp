#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "wmlab/common/error.hpp"
#include "wmlab/lm/fixture_model.hpp"
#include "wmlab/lm/generate.hpp"
#include "wmlab/lm/ngram.hpp"
#include "wmlab/text/tokenizer.hpp"
#include "wmlab/text/unicode.hpp"

using namespace wmlab;
using namespace wmlab::lm;
using wmlab::text::TokenId;

namespace {

struct ThRow {
  char32_t next;
  std::size_t count;
  double probability;
};
#include "oracles/ngram_th.inc"

std::shared_ptr<const text::Vocabulary> char_vocab(const std::vector<std::string>& docs) {
  std::set<char32_t> chars;
  for (const auto& d : docs) {
    for (char32_t cp : text::decode_utf8(d)) chars.insert(cp);
  }
  std::vector<std::string> tokens;
  for (char32_t cp : chars) tokens.push_back(text::encode_utf8(std::u32string(1, cp)));
  return std::make_shared<const text::Vocabulary>(std::move(tokens));
}

// Puts 0.6 on one token and spreads the rest evenly.
NextTokenDistribution peaked(std::size_t n, TokenId peak) {
  NextTokenDistribution p(n, 0.4 / static_cast<double>(n - 1));
  p[peak] = 0.6;
  return p;
}

}  // namespace

TEST_CASE("single continuation gets the mass up to smoothing") {
  auto vocab = std::make_shared<const text::Vocabulary>(std::vector<std::string>{"a", "b", "c"});
  const std::vector<std::string> corpus{"ab"};
  const auto model = train_ngram(corpus, vocab, {1, 0.1});
  const std::vector<TokenId> ctx{0};
  const auto p = model->distribution(ctx);
  // Support is {a, b}; c never occurs.
  CHECK(p[1] == doctest::Approx(1.1 / 1.2));
  CHECK(p[0] == doctest::Approx(0.1 / 1.2));
  CHECK(p[2] == 0.0);
  CHECK(model->probability(ctx, 1) == doctest::Approx(p[1]));
}

TEST_CASE("distributions are normalised") {
  auto vocab = std::make_shared<const text::Vocabulary>(text::build_word_vocabulary(testing::corpus()));
  for (std::size_t order : {1u, 2u, 3u}) {
    const auto model = train_ngram(testing::corpus(), vocab, {order, 0.1});
    std::mt19937_64 rng(order);
    for (int i = 0; i < 200; ++i) {
      std::vector<TokenId> ctx(rng() % 5);
      for (auto& t : ctx) t = static_cast<TokenId>(rng() % vocab->size());
      const auto p = model->distribution(ctx);
      CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK_NOTHROW(validate_distribution(p, vocab->size()));
    }
  }
}

TEST_CASE("empty corpus") {
  auto vocab = std::make_shared<const text::Vocabulary>(std::vector<std::string>{"a"});
  CHECK_THROWS_AS(train_ngram(std::vector<std::string>{}, vocab), EmptyCorpus);
  CHECK_THROWS_AS(train_ngram(std::vector<std::string>{""}, vocab), EmptyCorpus);
}

TEST_CASE("order-2 character model matches the frequency-count table") {
  const auto vocab = char_vocab(testing::corpus());
  const auto model = train_ngram(testing::corpus(), vocab, {2, kThAlpha});
  REQUIRE(model->support().size() == kThSupport);
  const std::vector<TokenId> ctx{*vocab->lookup("t"), *vocab->lookup("h")};
  const auto p = model->distribution(ctx);
  const auto* row = model->counts().find(ctx);
  REQUIRE(row != nullptr);
  CHECK(row->total == static_cast<double>(kThTotal));
  std::set<TokenId> seen;
  for (const auto& r : kThRows) {
    const TokenId id = *vocab->lookup(text::encode_utf8(std::u32string(1, r.next)));
    seen.insert(id);
    CHECK(testing::close_ulps(p[id], r.probability, 8));
  }
  for (TokenId id : model->support()) {
    if (!seen.contains(id)) CHECK(testing::close_ulps(p[id], kThUnseen, 8));
  }
}

TEST_CASE("constant fixture repeats its token") {
  auto vocab = testing::letter_vocab(5);
  const auto model = FixtureModel::constant(vocab, 3);
  GenerationConfig cfg;
  cfg.max_tokens = 17;
  cfg.seed = 99;
  const auto out = generate(*model, cfg);
  CHECK(out.ids == std::vector<TokenId>(17, 3));
}

TEST_CASE("same seed gives the same sequence") {
  auto vocab = std::make_shared<const text::Vocabulary>(text::build_word_vocabulary(testing::corpus()));
  const auto model = train_ngram(testing::corpus(), vocab);
  GenerationConfig cfg;
  cfg.max_tokens = 100;
  cfg.seed = 1234;
  cfg.prompt = {*vocab->lookup("The")};
  const auto a = generate(*model, cfg);
  const auto b = generate(*model, cfg);
  CHECK(a == b);
  cfg.seed = 1235;
  CHECK(generate(*model, cfg) != a);
}

TEST_CASE("greedy sampler follows the hand-traced argmax table") {
  // Empty context peaks at 3; after token t the peak is (2t + 1) mod 5.
  auto vocab = testing::letter_vocab(5);
  auto model = std::make_shared<const FixtureModel>(vocab, [](std::span<const TokenId> ctx) {
    if (ctx.empty()) return peaked(5, 3);
    return peaked(5, static_cast<TokenId>((2 * ctx.back() + 1) % 5));
  });
  GenerationConfig cfg;
  cfg.max_tokens = 10;
  cfg.sampler = [](std::span<const TokenId>, std::span<const double> probs, std::mt19937_64&) {
    return argmax_token(probs);
  };
  CHECK(generate(*model, cfg).ids == std::vector<TokenId>{3, 2, 0, 1, 3, 2, 0, 1, 3, 2});
  // A prompt only changes the starting context: 4 -> 4 -> 4 ...
  cfg.prompt = {4};
  CHECK(generate(*model, cfg).ids == std::vector<TokenId>(10, 4));
}

TEST_CASE("argmax breaks ties toward the lowest id") {
  const std::vector<double> p{0.2, 0.4, 0.4};
  CHECK(argmax_token(p) == 1);
}

TEST_CASE("invalid distribution from a hook") {
  auto vocab = testing::letter_vocab(4);
  const auto model = testing::fixed_model(vocab, {0.25, 0.25, 0.25, 0.25});
  GenerationConfig cfg;
  cfg.max_tokens = 3;
  cfg.logit_transform = [](std::span<const TokenId>, NextTokenDistribution& p) { p[0] = 0.9; };
  CHECK_THROWS_AS(generate(*model, cfg), InvalidDistribution);
  cfg.logit_transform = [](std::span<const TokenId>, NextTokenDistribution& p) { p[0] = NAN; };
  CHECK_THROWS_AS(generate(*model, cfg), InvalidDistribution);
  CHECK_THROWS_AS(validate_distribution(std::vector<double>{0.5, 0.6}, 2), InvalidDistribution);
  CHECK_THROWS_AS(validate_distribution(std::vector<double>{1.0}, 2), InvalidDistribution);
  CHECK_THROWS_AS(validate_distribution(std::vector<double>{1.5, -0.5}, 2), InvalidDistribution);
}

TEST_CASE("terminator ends generation after it is emitted") {
  auto vocab = testing::letter_vocab(3);
  auto model = std::make_shared<const FixtureModel>(vocab, [](std::span<const TokenId> ctx) {
    NextTokenDistribution p(3, 0.0);
    p[ctx.size() < 4 ? 0 : 2] = 1.0;
    return p;
  });
  GenerationConfig cfg;
  cfg.max_tokens = 50;
  cfg.terminator = 2;
  CHECK(generate(*model, cfg).ids == std::vector<TokenId>{0, 0, 0, 0, 2});
}

TEST_CASE("hidden tokens reach the hooks but not the model") {
  auto vocab = testing::letter_vocab(3);
  std::vector<std::size_t> context_sizes;
  auto model = std::make_shared<const FixtureModel>(vocab, [&](std::span<const TokenId> ctx) {
    context_sizes.push_back(ctx.size());
    return NextTokenDistribution{1.0, 0.0, 0.0};
  });
  GenerationConfig cfg;
  cfg.max_tokens = 4;
  cfg.forced_token = [](std::span<const TokenId> g) -> std::optional<TokenId> {
    if (g.size() % 2 == 1) return TokenId{2};
    return std::nullopt;
  };
  cfg.hidden_from_model = [](TokenId t) { return t == 2; };
  std::vector<std::size_t> hook_sizes;
  cfg.logit_transform = [&](std::span<const TokenId> g, NextTokenDistribution&) {
    hook_sizes.push_back(g.size());
  };
  CHECK(generate(*model, cfg).ids == std::vector<TokenId>{0, 2, 0, 2});
  CHECK(context_sizes == std::vector<std::size_t>{0, 1});
  CHECK(hook_sizes == std::vector<std::size_t>{0, 2});
}

TEST_CASE("multinomial draw frequencies") {
  const std::vector<double> p{0.1, 0.0, 0.6, 0.3};
  std::mt19937_64 rng(5);
  std::vector<int> hits(4, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++hits[sample_multinomial(p, rng)];
  CHECK(hits[1] == 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(hits[i] / static_cast<double>(n) == doctest::Approx(p[i]).epsilon(0.02));
  }
}

TEST_CASE("counts can be set directly") {
  NgramCounts counts(1);
  const std::vector<TokenId> ctx{0};
  counts.set(ctx, {{1, 2.5}, {0, 0.5}});
  const auto* row = counts.find(ctx);
  REQUIRE(row != nullptr);
  CHECK(row->total == 3.0);
  CHECK(row->counts.front().first == 0);
  CHECK(counts.key(std::vector<TokenId>{}) == std::vector<TokenId>{kBeginToken});
}
