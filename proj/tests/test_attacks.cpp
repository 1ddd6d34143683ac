#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "wmlab/attacks/attack.hpp"
#include "wmlab/attacks/distill.hpp"
#include "wmlab/attacks/emoji.hpp"
#include "wmlab/attacks/lexical.hpp"
#include "wmlab/attacks/noise.hpp"
#include "wmlab/attacks/rewrite.hpp"
#include "wmlab/attacks/tables.hpp"
#include "wmlab/attacks/token.hpp"
#include "wmlab/common/error.hpp"
#include "wmlab/lm/generate.hpp"
#include "wmlab/pretext/kgw.hpp"
#include "wmlab/text/segment.hpp"
#include "wmlab/text/tokenizer.hpp"
#include "wmlab/text/unicode.hpp"

using namespace wmlab;
using namespace wmlab::attacks;
using text::TokenId;

namespace {

const ContractionTable& contractions() {
  static const auto t = ContractionTable::load(testing::data_path("contractions.tsv"));
  return t;
}
const MisspellingTable& misspellings() {
  static const auto t = MisspellingTable::load(testing::data_path("misspellings.tsv"));
  return t;
}
const posttext::SynonymTable& synonyms() {
  static const auto t = posttext::SynonymTable::load(testing::data_path("synonyms.tsv"));
  return t;
}
std::shared_ptr<const text::Vocabulary> corpus_vocab() {
  static const auto v = std::make_shared<const text::Vocabulary>(text::build_word_vocabulary(testing::corpus()));
  return v;
}
std::shared_ptr<const lm::NgramModel> corpus_model() {
  static const auto m = lm::train_ngram(testing::corpus(), corpus_vocab());
  return m;
}

std::vector<std::string> words_of(std::string_view utf8) {
  const text::SegmentedText seg(utf8);
  std::vector<std::string> out;
  for (const auto& s : seg.spans) {
    if (s.kind == text::SpanKind::kWord) out.push_back(text::encode_utf8(seg.view(s)));
  }
  return out;
}

// Text of n corpus words of at least two letters, single-space separated.
std::string word_text(std::size_t n) {
  std::vector<std::string> pool;
  for (const auto& doc : testing::corpus()) {
    for (auto& w : words_of(doc)) {
      if (w.size() >= 2 && w.find('\'') == std::string::npos) pool.push_back(std::move(w));
    }
  }
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += pool[(i * 7919) % pool.size()];
  }
  return out;
}

// Optimal string alignment distance: edits are insert, delete, substitute
// and transpose adjacent characters.
std::size_t osa_distance(std::u32string_view a, std::u32string_view b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
      }
    }
  }
  return d[a.size()][b.size()];
}

std::vector<std::vector<TokenId>> corpus_prompts(std::size_t n) {
  std::vector<std::vector<TokenId>> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto ids = text::tokenize(testing::corpus()[i], *corpus_vocab()).ids;
    ids.resize(std::min<std::size_t>(ids.size(), 4));
    out.push_back(std::move(ids));
  }
  return out;
}

}  // namespace

TEST_CASE("contraction and expansion") {
  CHECK(attack_contraction("This is not fine.", contractions()) == "This isn't fine.");
  CHECK(attack_contraction("Is not it?", contractions()) == "Isn't it?");
  CHECK(attack_expansion("I don't know.", contractions()) == "I do not know.");
  CHECK(attack_expansion("Don't go.", contractions()) == "Do not go.");
  CHECK(attack_contraction("No hits in here.", contractions()) == "No hits in here.");
  CHECK(attack_expansion("No hits in here.", contractions()) == "No hits in here.");
  // Only single ASCII spaces join a phrase.
  CHECK(attack_contraction("is\u2004not", contractions()) == "is\u2004not");
}

TEST_CASE("contraction and expansion are idempotent") {
  for (std::size_t i = 0; i < 50; ++i) {
    const auto& doc = testing::corpus()[i];
    const auto c = attack_contraction(doc, contractions());
    CHECK(attack_contraction(c, contractions()) == c);
    const auto e = attack_expansion(doc, contractions());
    CHECK(attack_expansion(e, contractions()) == e);
  }
}

TEST_CASE("lowercase") {
  CHECK(attack_lowercase("ABC") == "abc");
  CHECK(attack_lowercase("already lower") == "already lower");
  CHECK(attack_lowercase("A\u2004B") == "a\u2004b");
}

TEST_CASE("zero-probability attacks are the identity") {
  const auto& doc = testing::corpus()[3];
  CHECK(attack_misspelling(doc, misspellings(), 0.0, 1) == doc);
  CHECK(attack_typo(doc, 0.0, 1) == doc);
  CHECK(attack_modify(doc, {0, 0, 0}, {}, 1) == doc);
  CHECK(attack_synonym(doc, synonyms(), 0.0, 1) == doc);
  CHECK(attack_token(doc, 0.0, TokenMode::kReplace, *corpus_vocab(), 1) == doc);
  CHECK(attack_token(doc, 0.0, TokenMode::kDelete, *corpus_vocab(), 1) == doc);
}

TEST_CASE("misspelling and typo alter the expected share of words") {
  const std::string text = word_text(10000);
  const auto before = words_of(text);
  REQUIRE(before.size() == 10000);
  for (int which = 0; which < 2; ++which) {
    const auto out = which == 0 ? attack_misspelling(text, misspellings(), 0.05, 77) : attack_typo(text, 0.05, 77);
    const auto after = words_of(out);
    REQUIRE(after.size() == before.size());
    std::size_t altered = 0;
    for (std::size_t i = 0; i < before.size(); ++i) altered += before[i] != after[i] ? 1 : 0;
    CHECK(std::fabs(static_cast<double>(altered) / 10000.0 - 0.05) <= 0.005);
  }
}

TEST_CASE("a typo is one keyboard edit") {
  std::mt19937_64 rng(4);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyzAEIOU";
  for (int trial = 0; trial < 5000; ++trial) {
    std::u32string word;
    const std::size_t len = 1 + rng() % 10;
    for (std::size_t i = 0; i < len; ++i) word += static_cast<char32_t>(alphabet[rng() % alphabet.size()]);
    const auto edited = typo_edit(word, rng());
    REQUIRE_MESSAGE(osa_distance(word, edited) == 1, text::encode_utf8(word));
  }
}

TEST_CASE("typo attack edits each hit word once") {
  const std::string text = word_text(3000);
  const auto before = words_of(text);
  const auto after = words_of(attack_typo(text, 0.2, 5));
  REQUIRE(after.size() == before.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (before[i] != after[i]) CHECK(osa_distance(text::decode_utf8(before[i]), text::decode_utf8(after[i])) == 1);
  }
}

TEST_CASE("modify") {
  const std::string text = word_text(500);
  CHECK(words_of(attack_modify(text, {1, 0, 0}, {}, 3)).size() == 1000);
  CHECK(words_of(attack_modify(text, {0, 1, 0}, {}, 3)).empty());
  const std::vector<std::string> lexicon{"zebra"};
  for (const auto& w : words_of(attack_modify(text, {0, 0, 1}, lexicon, 3))) CHECK(text::to_lower_utf8(w) == "zebra");
  CHECK_THROWS_AS(attack_modify(text, {0.6, 0.6, 0}, lexicon, 3), ConfigError);
  CHECK_THROWS_AS(attack_modify(text, {0, 0, 0.5}, {}, 3), ConfigError);
}

TEST_CASE("modify word-count change stays within binomial bounds") {
  std::size_t words = 0;
  long delta = 0;
  for (std::size_t i = 0; i < testing::corpus().size(); ++i) {
    const auto& doc = testing::corpus()[i];
    const auto n = words_of(doc).size();
    words += n;
    delta += static_cast<long>(words_of(attack_modify(doc, {0.05, 0.05, 0}, {}, i)).size()) - static_cast<long>(n);
  }
  // Each word moves the count by +1 or -1 with probability 0.05 each.
  const double sd = std::sqrt(0.1 * static_cast<double>(words));
  CHECK(std::fabs(static_cast<double>(delta)) <= 4.0 * sd);
}

TEST_CASE("synonym replacements come from the word's candidate list") {
  for (std::size_t i = 0; i < 40; ++i) {
    const auto& doc = testing::corpus()[i];
    const auto before = words_of(doc);
    const auto after = words_of(attack_synonym(doc, synonyms(), 0.5, i));
    REQUIRE(after.size() == before.size());
    for (std::size_t k = 0; k < before.size(); ++k) {
      if (before[k] == after[k]) continue;
      const auto* cands = synonyms().find(fold_word(before[k]));
      REQUIRE(cands != nullptr);
      const auto lower = text::to_lower_utf8(after[k]);
      CHECK(std::any_of(cands->begin(), cands->end(), [&](const auto& c) { return c.word == lower; }));
    }
  }
  CHECK(attack_synonym("Xyzzy plugh.", synonyms(), 1.0, 1) == "Xyzzy plugh.");
}

TEST_CASE("token deletion removes exactly round(pL) tokens") {
  const auto& vocab = *corpus_vocab();
  for (std::size_t i = 0; i < 30; ++i) {
    const auto& doc = testing::corpus()[i];
    const std::size_t length = text::tokenize(doc, vocab).size();
    const auto out = attack_token(doc, 0.1, TokenMode::kDelete, vocab, i);
    const auto removed = static_cast<std::size_t>(std::llround(0.1 * static_cast<double>(length)));
    CHECK(text::tokenize(out, vocab).size() == length - removed);
  }
  CHECK_THROWS_AS(attack_token("\U0001F680", 0.5, TokenMode::kDelete, text::Vocabulary({"a"}), 1), AttackFailed);
}

TEST_CASE("token replacement pulls the green fraction toward gamma") {
  const auto model = corpus_model();
  const auto& vocab = *corpus_vocab();
  pretext::Kgw kgw({0.25, 2.0, keyed::SecretKey::from_seed(5), 1, false}, vocab.size());
  double before = 0.0, after = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    lm::GenerationConfig cfg;
    cfg.max_tokens = 200;
    cfg.seed = s;
    kgw.install(cfg);
    const auto text = text::detokenize(lm::generate(*model, cfg), vocab);
    const auto green = [&](const std::string& t) {
      const auto r = kgw.score(text::tokenize_lenient(t, vocab).ids);
      return static_cast<double>(r.green_count) / static_cast<double>(r.length);
    };
    before += green(text);
    after += green(attack_token(text, 0.05, TokenMode::kReplace, vocab, s));
  }
  CHECK(after < before);
  CHECK(after / 20.0 > 0.25);
}

TEST_CASE("rewrite stub") {
  const RewriteStubTables tables{&synonyms(), &contractions(), 0.3};
  for (std::size_t i = 0; i < testing::corpus().size(); ++i) {
    const auto& doc = testing::corpus()[i];
    const auto out = rewrite_stub(doc, tables, i);
    CHECK(out == rewrite_stub(doc, tables, i));
    CHECK(count_sentences(out) == count_sentences(doc));
  }
  CHECK(count_sentences("One. Two! Three? Four") == 3);
}

TEST_CASE("external rewrite hooks") {
  const RewriteStubTables tables{&synonyms(), &contractions(), 0.3};
  CHECK(attack_rewrite("Some text.", {"cat", std::chrono::milliseconds(5000)}, tables, 1) == "Some text.");
  CHECK(attack_rewrite("Some text.", {"tr a-z A-Z", std::chrono::milliseconds(5000)}, tables, 1) == "SOME TEXT.");
  CHECK_THROWS_AS(attack_rewrite("x", {"false", std::chrono::milliseconds(5000)}, tables, 1), AttackFailed);
  CHECK_THROWS_AS(attack_rewrite("x", {"true", std::chrono::milliseconds(5000)}, tables, 1), AttackFailed);
  CHECK_THROWS_AS(attack_rewrite("x", {"sleep 5", std::chrono::milliseconds(200)}, tables, 1), AttackFailed);
  CHECK(attack_rewrite("Some text.", {}, tables, 1) == rewrite_stub("Some text.", tables, 1));
}

TEST_CASE("emoji attack") {
  const auto model = corpus_model();
  const EmojiAttack emoji(model->vocab());
  lm::GenerationConfig cfg;
  cfg.max_tokens = 60;
  cfg.seed = 3;
  emoji.install(cfg);
  const auto raw = lm::generate(*model, cfg);
  std::size_t words = 0, emojis = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw.ids[i] == emoji.emoji()) {
      ++emojis;
      continue;
    }
    if (!emoji.is_word_token(raw.ids[i])) continue;
    ++words;
    // Every word is followed by exactly two emoji, unless generation ended.
    if (i + 2 < raw.size()) {
      CHECK(raw.ids[i + 1] == emoji.emoji());
      CHECK(raw.ids[i + 2] == emoji.emoji());
      if (i + 3 < raw.size()) CHECK(raw.ids[i + 3] != emoji.emoji());
    }
  }
  CHECK(emojis >= 2 * words - 2);
  CHECK(emojis <= 2 * words);
  const auto stripped = emoji.strip(raw, 1000);
  CHECK(stripped.size() == raw.size() - emojis);
  CHECK(std::count(stripped.ids.begin(), stripped.ids.end(), emoji.emoji()) == 0);

  lm::GenerationConfig fresh;
  fresh.max_tokens = 50;
  fresh.seed = 4;
  const auto out = emoji.generate(*model, fresh);
  CHECK(out.size() == 50);
  CHECK(std::count(out.ids.begin(), out.ids.end(), emoji.emoji()) == 0);

  CHECK_THROWS_AS(EmojiAttack(text::Vocabulary({"a", "b"})), ConfigError);
}

TEST_CASE("distilling an unwatermarked teacher reproduces it") {
  const auto teacher = corpus_model();
  const auto prompts = corpus_prompts(20);
  const auto student = distill(*teacher, [](lm::GenerationConfig&) {}, prompts, {DistillMode::kLogitMatch, 100, 100, 9});
  std::size_t contexts = 0;
  for (TokenId t = 0; t < teacher->vocab().size(); ++t) {
    const std::vector<TokenId> ctx{t};
    if (teacher->counts().find(ctx) == nullptr) continue;
    ++contexts;
    const auto p = teacher->distribution(ctx), q = student->distribution(ctx);
    double tv = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) tv += std::fabs(p[i] - q[i]);
    CHECK(tv / 2.0 <= 0.05);
  }
  CHECK(contexts > 100);
}

TEST_CASE("sample-finetune adds one count per answer token") {
  const auto teacher = corpus_model();
  const auto prompts = corpus_prompts(5);
  const auto student = distill(*teacher, [](lm::GenerationConfig&) {}, prompts, {DistillMode::kSampleFinetune, 10, 30, 2});
  const auto mass = [](const lm::NgramModel& m) {
    double total = 0.0;
    for (TokenId t = 0; t < m.vocab().size(); ++t) {
      if (const auto* row = m.counts().find(std::vector<TokenId>{t})) total += row->total;
    }
    if (const auto* row = m.counts().find(std::vector<TokenId>{})) total += row->total;
    return total;
  };
  CHECK(mass(*student) - mass(*teacher) == doctest::Approx(300.0));
}

TEST_CASE("distill needs an n-gram teacher") {
  auto vocab = testing::letter_vocab(3);
  const auto fixture = lm::FixtureModel::constant(vocab, 1);
  const std::vector<std::vector<TokenId>> prompts{{0}};
  CHECK_THROWS_AS(distill(*fixture, [](lm::GenerationConfig&) {}, prompts, {}), Unsupported);
}

TEST_CASE("fit_counts reproduces the target exactly") {
  const std::vector<double> target{0.5, 0.0, 0.3, 0.2};
  const std::vector<TokenId> support{0, 2, 3};
  const double alpha = 0.1;
  const auto counts = fit_counts(target, support, alpha);
  double total = 0.0;
  for (const auto& [id, c] : counts) total += c;
  const double norm = total + alpha * 3.0;
  for (const auto& [id, c] : counts) CHECK((c + alpha) / norm == doctest::Approx(target[id]).epsilon(1e-12));
}

TEST_CASE("applicability follows the scheme families") {
  const std::vector<std::string> all{"kgw", "unigram", "exponential", "inverse",
                                     "convert", "whitemark", "unispach", "linguistic"};
  for (AttackId id : kAllAttacks) {
    for (const auto& s : all) {
      bool expected = true;
      if (id == AttackId::kEmoji) expected = s == "kgw" || s == "unigram" || s == "inverse" || s == "exponential";
      if (id == AttackId::kDistill) expected = s == "kgw" || s == "inverse" || s == "exponential";
      CHECK_MESSAGE(attack_applicable(id, s) == expected, s, " ", attack_name(id));
    }
    CHECK(attack_from_name(attack_name(id)) == id);
  }
  CHECK_THROWS_AS(attack_from_name("nonsense"), ConfigError);
  CHECK(is_pretext_attack(AttackId::kEmoji));
  CHECK_FALSE(is_pretext_attack(AttackId::kTypo));
}

TEST_CASE("attack specs") {
  AttackSpec spec;
  spec.id = AttackId::kTypo;
  spec.p = 0.05;
  CHECK(spec.label() == "typo(p=0.05)");
  spec.id = AttackId::kModify;
  spec.modify = {0.05, 0.05, 0.0};
  CHECK(spec.label() == "modify(0.05,0.05,0)");
  spec.id = AttackId::kTypo;
  spec.p = 1.5;
  CHECK_THROWS_AS(spec.validate(), ConfigError);

  AttackResources res;
  spec = AttackSpec{};
  spec.id = AttackId::kEmoji;
  CHECK_THROWS_AS(apply_text_attack("text", spec, res), Unsupported);
}

TEST_CASE("text attacks are deterministic in their seed") {
  AttackResources res;
  res.contractions = std::make_shared<const ContractionTable>(contractions());
  res.misspellings = std::make_shared<const MisspellingTable>(misspellings());
  res.synonyms = std::make_shared<const posttext::SynonymTable>(synonyms());
  res.vocab = corpus_vocab();
  res.lexicon = top_words(testing::corpus(), 200);
  const auto& doc = testing::corpus()[10];
  for (AttackId id : kAllAttacks) {
    if (is_pretext_attack(id)) continue;
    AttackSpec spec;
    spec.id = id;
    spec.p = 0.3;
    spec.modify = {0.1, 0.1, 0.1};
    spec.seed = 1234;
    const auto a = apply_text_attack(doc, spec, res);
    CHECK(a == apply_text_attack(doc, spec, res));
  }
}

TEST_CASE("top words and folding") {
  const auto top = top_words({"b a a", "c b a"}, 2);
  CHECK(top == std::vector<std::string>{"a", "b"});
  CHECK(fold_word("Don\u2019t") == "don't");
}
