#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>

#include "doctest.h"
#include "support.hpp"
#include "wmlab/common/calibration.hpp"
#include "wmlab/common/error.hpp"
#include "wmlab/common/seed.hpp"
#include "wmlab/keyed/green_list.hpp"
#include "wmlab/lm/generate.hpp"
#include "wmlab/pretext/convert.hpp"
#include "wmlab/pretext/exponential.hpp"
#include "wmlab/pretext/inverse.hpp"
#include "wmlab/pretext/kgw.hpp"

using namespace wmlab;
using namespace wmlab::pretext;

namespace {

const keyed::SecretKey kKey = keyed::SecretKey::from_seed(2024);

std::vector<TokenId> random_tokens(std::size_t n, std::size_t vocab, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TokenId> out(n);
  for (auto& t : out) t = static_cast<TokenId>(rng() % vocab);
  return out;
}

std::vector<TokenId> generate_with(const PretextScheme& scheme, const lm::LanguageModel& model,
                                   std::size_t length, std::uint64_t seed) {
  lm::GenerationConfig cfg;
  cfg.max_tokens = length;
  cfg.seed = seed;
  scheme.install(cfg);
  return lm::generate(model, cfg).ids;
}

// Deletes round(fraction * n) distinct positions chosen by `seed`.
std::vector<TokenId> delete_fraction(const std::vector<TokenId>& tokens, double fraction,
                                     std::uint64_t seed) {
  std::vector<std::size_t> order(tokens.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<bool> drop(tokens.size(), false);
  const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(tokens.size())));
  for (std::size_t i = 0; i < k; ++i) drop[order[i]] = true;
  std::vector<TokenId> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!drop[i]) out.push_back(tokens[i]);
  }
  return out;
}

}  // namespace

TEST_CASE("kgw bias with zero delta is the identity") {
  const std::vector<bool> green{true, false, true, false};
  lm::NextTokenDistribution p{0.1, 0.2, 0.3, 0.4};
  const auto before = p;
  kgw_bias(green, 0.0, p);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i] == doctest::Approx(before[i]));
}

TEST_CASE("kgw bias on a uniform four-token distribution") {
  // Direct softmax computation: green e^2 / (2 e^2 + 2), red 1 / (2 e^2 + 2).
  const double green_value = 0.4403985389889412;
  const double red_value = 0.05960146101105878;
  const std::vector<bool> green{true, false, false, true};
  lm::NextTokenDistribution p(4, 0.25);
  kgw_bias(green, 2.0, p);
  CHECK(testing::close_ulps(p[0], green_value));
  CHECK(testing::close_ulps(p[3], green_value));
  CHECK(testing::close_ulps(p[1], red_value));
  CHECK(testing::close_ulps(p[2], red_value));
}

TEST_CASE("kgw z-score") {
  CHECK(kgw_z_score(25, 100, 0.25) == 0.0);
  CHECK(testing::close_ulps(kgw_z_score(40, 100, 0.25), 15.0 / std::sqrt(18.75)));
  CHECK(kgw_z_score(40, 100, 0.25) == doctest::Approx(3.4641).epsilon(1e-4));
  CHECK_THROWS_AS(kgw_z_score(0, 0, 0.25), EmptyInput);
}

TEST_CASE("kgw score counts green tokens under the prefix context") {
  const std::size_t vocab = 200;
  Kgw kgw({0.25, 2.0, kKey, 1, false}, vocab);
  const auto tokens = random_tokens(300, vocab, 1);
  std::size_t green = 0;
  for (std::size_t j = 0; j < tokens.size(); ++j) {
    const auto ctx = kgw.context_at(std::span<const TokenId>(tokens).first(j));
    green += kgw.is_green(ctx, tokens[j]) ? 1 : 0;
  }
  const auto report = kgw.score(tokens);
  CHECK(report.green_count == green);
  CHECK(report.length == tokens.size());
  CHECK(report.z == kgw_z_score(green, tokens.size(), 0.25));
  const auto curve = kgw.prefix_statistics(tokens);
  CHECK(curve.back() == report.z);
  CHECK_THROWS_AS(kgw.score({}), EmptyInput);
}

TEST_CASE("unigram uses one green list everywhere") {
  const std::size_t vocab = 100;
  Kgw uni({0.25, 2.0, kKey, 1, true}, vocab);
  const std::vector<TokenId> a{1, 2, 3}, b{50, 60};
  CHECK(uni.context_at(a) == uni.context_at(b));
}

TEST_CASE("kgw generation raises the green fraction") {
  const std::size_t vocab = 300;
  const auto model = testing::fixed_model(testing::letter_vocab(vocab), testing::skewed(vocab));
  Kgw kgw({0.25, 2.0, kKey, 1, false}, vocab);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto marked = generate_with(kgw, *model, 200, seed);
    CHECK(kgw.score(marked).z > 4.0);
    lm::GenerationConfig plain;
    plain.max_tokens = 200;
    plain.seed = seed;
    CHECK(kgw.score(lm::generate(*model, plain).ids).z < 4.0);
  }
}

TEST_CASE("exp_select") {
  const std::vector<double> r{0.3, 0.8, 0.5};
  CHECK(exp_select(r, std::vector<double>{0.0, 0.0, 1.0}) == 2);
  // log(r)/p = -2.408, -1.116, -2.310
  CHECK(exp_select(r, std::vector<double>{0.5, 0.2, 0.3}) == 1);
  // log(r)/p = -1.054, -2.682, -1.189
  CHECK(exp_select(std::vector<double>{0.9, 0.2, 0.7}, std::vector<double>{0.1, 0.6, 0.3}) == 0);
  CHECK_THROWS_AS(exp_select(r, std::vector<double>{0.0, 0.0, 0.0}), InvalidDistribution);
}

TEST_CASE("exponential sampler preserves the distribution over random keys") {
  const std::vector<double> probs{0.30, 0.20, 0.15, 0.12, 0.10, 0.07, 0.04, 0.02};
  const keyed::PrefixContext ctx{{1, 2, 3, 4}};
  const std::size_t draws = 10000;
  std::vector<double> hits(probs.size(), 0.0);
  for (std::uint64_t k = 0; k < draws; ++k) {
    Exponential scheme({keyed::SecretKey::from_seed(k), 4}, probs.size());
    hits[scheme.sample(ctx, probs)] += 1.0;
  }
  double chi2 = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double expected = probs[i] * static_cast<double>(draws);
    chi2 += (hits[i] - expected) * (hits[i] - expected) / expected;
  }
  const boost::math::chi_squared dist(static_cast<double>(probs.size() - 1));
  CHECK(boost::math::cdf(boost::math::complement(dist, chi2)) > 0.01);
}

TEST_CASE("exponential evidence is -log(1 - r) of the observed token") {
  const std::size_t vocab = 50;
  Exponential scheme({kKey, 2}, vocab);
  const auto tokens = random_tokens(40, vocab, 4);
  const auto ev = scheme.evidence(tokens);
  const auto curve = scheme.prefix_statistics(tokens);
  double sum = 0.0;
  for (std::size_t j = 0; j < tokens.size(); ++j) {
    const auto ctx = keyed::PrefixContext::from_history(std::span<const TokenId>(tokens).first(j), 2);
    const double r = keyed::prefix_uniform(kKey, ctx, tokens[j]);
    CHECK(ev[j] == -std::log1p(-r));
    sum += ev[j];
    CHECK(curve[j] == doctest::Approx(sum));
  }
}

TEST_CASE("exponential null statistic averages one per token") {
  Exponential scheme({kKey, 4}, 1000);
  const auto tokens = random_tokens(20000, 1000, 5);
  const double per_token = scheme.prefix_statistics(tokens).back() / 20000.0;
  CHECK(per_token == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("exponential watermark margin grows with length") {
  const std::size_t vocab = 100;
  const auto model = testing::fixed_model(testing::letter_vocab(vocab), testing::skewed(vocab));
  Exponential scheme({kKey, 4}, vocab);
  double margin_50 = 0.0, margin_100 = 0.0, margin_200 = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto tokens = generate_with(scheme, *model, 200, seed);
    const auto curve = scheme.prefix_statistics(tokens);
    margin_50 += curve[49] - 50.0;
    margin_100 += curve[99] - 100.0;
    margin_200 += curve[199] - 200.0;
  }
  CHECK(margin_50 > 0.0);
  CHECK(margin_100 > margin_50);
  CHECK(margin_200 > margin_100);
}

TEST_CASE("inv_select") {
  const std::vector<double> xi{0.3, 0.8, 0.5};
  CHECK(inv_select(xi, std::vector<double>{0.0, 1.0, 0.0}) == 1);
  CHECK(inv_select(xi, std::vector<double>{0.5, 0.2, 0.3}) == 1);
  CHECK(inv_select(std::vector<double>{0.9, 0.2, 0.7}, std::vector<double>{0.1, 0.6, 0.3}) == 0);
}

TEST_CASE("inverse sampling depends on the position only") {
  const std::size_t vocab = 20;
  Inverse scheme({kKey, 64, 2, 8}, vocab);
  lm::GenerationConfig cfg;
  cfg.seed = 77;
  scheme.install(cfg);
  std::mt19937_64 rng(0);
  const auto probs = testing::skewed(vocab);
  const std::vector<TokenId> h1{1, 2, 3}, h2{9, 9, 9};
  CHECK(cfg.sampler(h1, probs, rng) == cfg.sampler(h2, probs, rng));
  const std::size_t shift = scheme.shift_for_seed(77);
  CHECK(cfg.sampler(h1, probs, rng) == inv_select(scheme.key_sequence().row(scheme.row_for(shift, 3)), probs));
}

TEST_CASE("inverse key exhaustion") {
  const std::size_t vocab = 10;
  Inverse scheme({kKey, 5, 1, 2}, vocab);
  const auto probs = testing::skewed(vocab);
  CHECK_NOTHROW(scheme.sample(4, 0, probs));
  CHECK_THROWS_AS(scheme.sample(5, 0, probs), KeyExhausted);
  const auto model = testing::fixed_model(testing::letter_vocab(vocab), probs);
  CHECK_THROWS_AS(generate_with(scheme, *model, 6, 1), KeyExhausted);
  CHECK_THROWS_AS(Inverse({kKey, 4, 5, 2}, vocab), ConfigError);
}

TEST_CASE("inverse single-token score") {
  const std::size_t vocab = 30;
  Inverse scheme({kKey, 16, 1, 4}, vocab);
  const std::vector<TokenId> one{7};
  const double v = scheme.key_sequence().at(0, 7);
  CHECK(scheme.unaligned_score(one) == -std::log1p(-v));
  CHECK(scheme.evidence(one)[0] == -std::log1p(-v));
  // The alignment may skip rows, so it never scores below the diagonal.
  CHECK(scheme.prefix_statistics(one)[0] >= -std::log1p(-v));
}

TEST_CASE("inverse null statistic averages one per token") {
  Inverse scheme({kKey, 2000, 1, 8}, 500);
  double total = 0.0;
  for (std::uint64_t s = 0; s < 5; ++s) total += scheme.unaligned_score(random_tokens(1000, 500, s));
  CHECK(total / 5000.0 == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("alignment absorbs token deletions") {
  const std::size_t vocab = 50;
  const auto model = testing::fixed_model(testing::letter_vocab(vocab), testing::skewed(vocab));
  Inverse scheme({kKey, 1024, 2, 64}, vocab);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto marked = generate_with(scheme, *model, 200, seed);
    const auto attacked = delete_fraction(marked, 0.1, seed);
    const double aligned_drop =
        scheme.prefix_statistics(marked).back() - scheme.prefix_statistics(attacked).back();
    const double unaligned_drop = scheme.unaligned_score(marked) - scheme.unaligned_score(attacked);
    CHECK(aligned_drop < unaligned_drop);
  }
}

TEST_CASE("convert token score") {
  CHECK(testing::close_ulps(convert_token_score(1, std::exp(-2.0)), 2.0));
  CHECK(convert_token_score(0, 1.0 - std::exp(-3.0)) == doctest::Approx(3.0));
  CHECK(convert_token_score(1, 0.5) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("convert with every token on bit 1 samples without restriction") {
  const std::vector<std::uint8_t> bits(4, 1);
  const std::vector<double> probs{0.1, 0.2, 0.3, 0.4};
  const double cumulative[] = {0.1, 0.3, 0.6, 1.0};
  std::mt19937_64 rng(8);
  for (int i = 0; i < 1000; ++i) {
    const double u = wmlab::unit_from_bits(rng()), v = wmlab::unit_from_bits(rng());
    const auto draw = Convert::sample_with(bits, u, v, probs);
    CHECK(draw.bit == 1);
    const auto expected = static_cast<TokenId>(std::upper_bound(std::begin(cumulative), std::end(cumulative), v) -
                                               std::begin(cumulative));
    CHECK(draw.token == std::min<TokenId>(expected, 3));
  }
}

TEST_CASE("convert with all mass on 1-tokens always emits bit 1") {
  const std::vector<std::uint8_t> bits{1, 0, 1, 0};
  const std::vector<double> probs{0.7, 0.0, 0.3, 0.0};
  std::mt19937_64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    const auto draw = Convert::sample_with(bits, wmlab::unit_from_bits(rng()), wmlab::unit_from_bits(rng()), probs);
    CHECK(draw.bit == 1);
    CHECK(bits[draw.token] == 1);
    CHECK_FALSE(draw.fell_back);
  }
}

TEST_CASE("convert falls back when the chosen class is empty") {
  const std::vector<std::uint8_t> bits{1, 0};
  const auto draw = Convert::sample_with(bits, 0.9, 0.5, std::vector<double>{0.5, 0.0});
  CHECK(draw.bit == 0);
  CHECK(draw.fell_back);
  CHECK(draw.token == 0);
}

TEST_CASE("convert null and watermarked scores") {
  const std::size_t vocab = 200;
  Convert scheme({kKey, 4}, vocab);
  const double null_mean = scheme.prefix_statistics(random_tokens(20000, vocab, 6)).back() / 20000.0;
  CHECK(null_mean == doctest::Approx(1.0).epsilon(0.03));

  const auto probs = testing::skewed(vocab);
  const auto model = testing::fixed_model(testing::letter_vocab(vocab), probs);
  double mass_one = 0.0;
  for (std::size_t i = 0; i < vocab; ++i) mass_one += scheme.bit(static_cast<TokenId>(i)) ? probs[i] : 0.0;
  double marked_total = 0.0, plain_total = 0.0;
  std::size_t ones = 0, tokens = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto marked = generate_with(scheme, *model, 400, seed);
    marked_total += scheme.prefix_statistics(marked).back();
    for (TokenId t : marked) ones += static_cast<std::size_t>(scheme.bit(t));
    tokens += marked.size();
    lm::GenerationConfig plain;
    plain.max_tokens = 400;
    plain.seed = seed;
    plain_total += scheme.prefix_statistics(lm::generate(*model, plain).ids).back();
  }
  // Bit 1 is emitted with probability equal to the model's mass on
  // 1-tokens, so the share of 1-tokens tracks that mass (4 sigma).
  const double n = static_cast<double>(tokens);
  CHECK(std::fabs(static_cast<double>(ones) / n - mass_one) < 4.0 * std::sqrt(mass_one * (1 - mass_one) / n));
  CHECK(marked_total > plain_total);
}

TEST_CASE("detection truncates to the calibrated length") {
  const std::size_t vocab = 100;
  Kgw kgw({0.25, 2.0, kKey, 1, false}, vocab);
  std::vector<std::vector<double>> curves;
  for (std::uint64_t s = 0; s < 50; ++s) curves.push_back(kgw.prefix_statistics(random_tokens(30, vocab, s)));
  const NullCalibration cal(curves, 0.95);
  REQUIRE(cal.max_length() == 30);
  const auto tokens = random_tokens(80, vocab, 99);
  const auto report = kgw.detect(tokens, cal);
  CHECK(report.length == 30);
  CHECK(report.statistic == kgw.score(std::span<const TokenId>(tokens).first(30)).z);
  CHECK(report.cutoff == cal.cutoff(30));
  CHECK(report.decision == (report.statistic > report.cutoff));
  CHECK_THROWS_AS(kgw.detect({}, cal), EmptyInput);
}

TEST_CASE("kgw with zero delta matches unbiased generation") {
  const std::size_t vocab = 300;
  const auto model = testing::fixed_model(testing::letter_vocab(vocab), testing::skewed(vocab));
  Kgw biased({0.25, 0.0, kKey, 1, false}, vocab);
  std::vector<double> with_hook, without;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    with_hook.push_back(static_cast<double>(biased.score(generate_with(biased, *model, 100, seed)).green_count));
    lm::GenerationConfig plain;
    plain.max_tokens = 100;
    plain.seed = seed + 100000;
    without.push_back(static_cast<double>(biased.score(lm::generate(*model, plain).ids).green_count));
  }
  // Two-sample Kolmogorov-Smirnov statistic against its 1% critical value.
  std::sort(with_hook.begin(), with_hook.end());
  std::sort(without.begin(), without.end());
  double d = 0.0;
  for (double x : with_hook) {
    const auto a = static_cast<double>(std::upper_bound(with_hook.begin(), with_hook.end(), x) - with_hook.begin());
    const auto b = static_cast<double>(std::upper_bound(without.begin(), without.end(), x) - without.begin());
    d = std::max(d, std::fabs(a - b) / 200.0);
  }
  CHECK(d < 1.628 * std::sqrt(2.0 / 200.0));
}

TEST_CASE("unigram colors a token the same everywhere") {
  const std::size_t vocab = 100;
  Kgw uni({0.25, 2.0, kKey, 1, true}, vocab);
  const auto history = random_tokens(50, vocab, 12);
  for (TokenId t = 0; t < vocab; ++t) {
    const bool first = uni.is_green(uni.context_at({}), t);
    for (std::size_t j = 1; j < history.size(); j += 7) {
      CHECK(uni.is_green(uni.context_at(std::span<const TokenId>(history).first(j)), t) == first);
    }
  }
}

TEST_CASE("detection with the wrong key behaves as the null") {
  const std::size_t vocab = 200;
  const auto probs = testing::skewed(vocab);
  const auto model = testing::fixed_model(testing::letter_vocab(vocab), probs);
  const auto other = keyed::SecretKey::from_seed(999);
  Kgw signer({0.25, 2.0, kKey, 1, false}, vocab), checker({0.25, 2.0, other, 1, false}, vocab);
  Exponential exp_signer({kKey, 4}, vocab), exp_checker({other, 4}, vocab);

  std::vector<std::vector<double>> kgw_null, exp_null;
  for (std::uint64_t s = 0; s < 400; ++s) {
    lm::GenerationConfig plain;
    plain.max_tokens = 100;
    plain.seed = 50000 + s;
    const auto tokens = lm::generate(*model, plain).ids;
    kgw_null.push_back(checker.prefix_statistics(tokens));
    exp_null.push_back(exp_checker.prefix_statistics(tokens));
  }
  const NullCalibration kgw_cal(kgw_null, 0.95), exp_cal(exp_null, 0.95);
  int kgw_hits = 0, exp_hits = 0;
  const int n = 200;
  for (int s = 0; s < n; ++s) {
    kgw_hits += checker.detect(generate_with(signer, *model, 100, s), kgw_cal).decision ? 1 : 0;
    exp_hits += exp_checker.detect(generate_with(exp_signer, *model, 100, s), exp_cal).decision ? 1 : 0;
  }
  CHECK(kgw_hits <= n / 20);
  CHECK(exp_hits <= n / 20);
}

TEST_CASE("convert bit map is roughly balanced") {
  Convert scheme({kKey, 4}, 5000);
  const auto bits = scheme.bit_map();
  const double ones = static_cast<double>(std::count(bits.begin(), bits.end(), 1));
  CHECK(std::fabs(ones / 5000.0 - 0.5) <= 0.05);
}

TEST_CASE("token samplers are deterministic in key, context and distribution") {
  const std::size_t vocab = 64;
  const auto probs = testing::skewed(vocab);
  const keyed::PrefixContext ctx{{3, 1, 4, 1}};
  Exponential e1({kKey, 4}, vocab), e2({kKey, 4}, vocab);
  Convert c1({kKey, 4}, vocab), c2({kKey, 4}, vocab);
  Inverse i1({kKey, 32, 2, 4}, vocab), i2({kKey, 32, 2, 4}, vocab);
  CHECK(e1.sample(ctx, probs) == e2.sample(ctx, probs));
  CHECK(c1.sample(ctx, probs).token == c2.sample(ctx, probs).token);
  CHECK(i1.sample(5, 1, probs) == i2.sample(5, 1, probs));
}
