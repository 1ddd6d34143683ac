#include "wmlab/eval/lab.hpp"

#include <chrono>
#include <cstdio>
#include <unordered_set>

#include "wmlab/attacks/emoji.hpp"
#include "wmlab/common/error.hpp"
#include "wmlab/common/seed.hpp"
#include "wmlab/text/segment.hpp"
#include "wmlab/text/tokenizer.hpp"
#include "wmlab/text/unicode.hpp"

namespace wmlab::eval {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::unordered_set<std::string> corpus_lexicon(const std::vector<std::string>& docs) {
  std::unordered_set<std::string> out;
  for (const auto& doc : docs) {
    const text::SegmentedText seg(doc);
    for (const auto& s : seg.spans) {
      if (s.kind == text::SpanKind::kWord) out.insert(text::encode_utf8(text::to_lower(seg.view(s))));
    }
  }
  return out;
}

attacks::TokenMode token_mode(const std::string& name) {
  if (name == "delete") return attacks::TokenMode::kDelete;
  if (name == "insert") return attacks::TokenMode::kInsert;
  return attacks::TokenMode::kReplace;
}

}  // namespace

std::string text_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Lab::Lab(LabConfig config) : config_(std::move(config)) {
  config_.validate();
  const auto docs = lm::load_corpus(config_.data.corpus.string());
  if (docs.empty()) throw EmptyCorpus("corpus " + config_.data.corpus.string() + " has no documents");
  vocab_ = std::make_shared<const text::Vocabulary>(
      config_.data.vocabulary.empty() ? text::build_word_vocabulary(docs)
                                      : text::Vocabulary::load(config_.data.vocabulary));
  model_ = lm::train_ngram(docs, vocab_, {config_.model.order, config_.model.alpha});

  all_prompts_ = PromptDataset::load(config_.data.prompts);
  eval_prompts_ = all_prompts_.head(config_.evaluation.prompts);
  for (const auto& item : all_prompts_.items) {
    prompt_tokens_.push_back(text::tokenize_lenient(item.instruction, *vocab_).ids);
  }

  resources_.contractions =
      std::make_shared<const attacks::ContractionTable>(attacks::ContractionTable::load(config_.data.contractions));
  resources_.misspellings =
      std::make_shared<const attacks::MisspellingTable>(attacks::MisspellingTable::load(config_.data.misspellings));
  resources_.synonyms =
      std::make_shared<const posttext::SynonymTable>(posttext::SynonymTable::load(config_.data.synonyms));
  resources_.vocab = vocab_;
  resources_.lexicon = attacks::top_words(docs, config_.attacks.lexicon_size);
  resources_.rewrite_synonym_prob = config_.attacks.rewrite_synonym_p;

  if (config_.judge.command.empty()) {
    judge_ = std::make_unique<ProxyJudge>(model_, corpus_lexicon(docs));
  } else {
    judge_ = std::make_unique<ExternalJudge>(
        config_.judge.command,
        std::chrono::milliseconds(static_cast<long long>(config_.judge.timeout_s * 1000.0)));
  }
}

std::vector<std::string> Lab::scheme_names() const {
  if (!config_.evaluation.schemes.empty()) return config_.evaluation.schemes;
  return {kAllSchemes.begin(), kAllSchemes.end()};
}

std::vector<attacks::AttackId> Lab::attack_ids() const {
  if (config_.evaluation.attacks.empty()) return {attacks::kAllAttacks.begin(), attacks::kAllAttacks.end()};
  std::vector<attacks::AttackId> out;
  for (const auto& a : config_.evaluation.attacks) out.push_back(attacks::attack_from_name(a));
  return out;
}

attacks::AttackSpec Lab::attack_spec(attacks::AttackId id) const {
  using attacks::AttackId;
  const auto& a = config_.attacks;
  attacks::AttackSpec spec;
  spec.id = id;
  spec.modify = a.modify;
  spec.token_mode = token_mode(a.token_mode);
  spec.hook.timeout = std::chrono::milliseconds(static_cast<long long>(a.rewrite_timeout_s * 1000.0));
  spec.distill_mode = a.kgw_distill_mode == "sample-finetune" ? attacks::DistillMode::kSampleFinetune
                                                              : attacks::DistillMode::kLogitMatch;
  switch (id) {
    case AttackId::kMisspelling: spec.p = a.misspelling_p; break;
    case AttackId::kTypo: spec.p = a.typo_p; break;
    case AttackId::kSynonym: spec.p = a.synonym_p; break;
    case AttackId::kToken: spec.p = a.token_p; break;
    case AttackId::kParaphrase: spec.hook.command = a.paraphrase_command; break;
    case AttackId::kTranslation: spec.hook.command = a.translation_command; break;
    default: break;
  }
  return spec;
}

attacks::AttackSpec Lab::attack_spec(attacks::AttackId id, double strength) const {
  auto spec = attack_spec(id);
  if (id == attacks::AttackId::kModify) {
    spec.modify = {strength, strength, 0.0};
  } else {
    spec.p = strength;
  }
  spec.validate();
  return spec;
}

const Scheme& Lab::scheme(const std::string& name) {
  std::lock_guard lock(mutex_);
  auto& slot = schemes_[name];
  if (!slot) slot = build_scheme(name, config_, vocab_->size(), resources_.synonyms);
  return *slot;
}

std::uint64_t Lab::prompt_seed(std::size_t prompt, std::string_view stage) const {
  return derive_seed(config_.seed, {eval_prompts_.items.at(prompt).id, stage});
}

lm::GenerationConfig Lab::generation_config(std::size_t prompt) const {
  lm::GenerationConfig cfg;
  cfg.max_tokens = config_.model.max_tokens;
  cfg.seed = prompt_seed(prompt, "generate");
  cfg.prompt = prompt_tokens_.at(prompt);
  return cfg;
}

double Lab::grade(std::size_t prompt, std::string_view response) const {
  return judge_->grade(eval_prompts_.items.at(prompt).instruction, response);
}

const std::vector<std::string>& Lab::null_pool() {
  std::lock_guard lock(mutex_);
  if (have_pool_) return null_pool_;
  const auto length = static_cast<std::size_t>(config_.calibration.pool_factor *
                                               static_cast<double>(config_.model.max_tokens));
  null_pool_.reserve(config_.calibration.samples);
  for (std::size_t i = 0; i < config_.calibration.samples; ++i) {
    lm::GenerationConfig cfg;
    cfg.max_tokens = length;
    cfg.seed = derive_seed(config_.seed, {"null-pool", std::to_string(i)});
    cfg.prompt = prompt_tokens_[i % eval_prompts_.size()];
    null_pool_.push_back(text::detokenize(lm::generate(*model_, cfg), *vocab_));
  }
  have_pool_ = true;
  return null_pool_;
}

const NullCalibration* Lab::calibration(const std::string& name) {
  std::lock_guard lock(mutex_);
  const auto& s = scheme(name);
  if (!s.needs_calibration()) return nullptr;
  auto& slot = calibrations_[name];
  if (!slot) {
    std::vector<std::vector<double>> curves;
    for (const auto& text : null_pool()) {
      auto curve = s.null_curve(text, *vocab_);
      if (!curve.empty()) curves.push_back(std::move(curve));
    }
    slot = std::make_unique<NullCalibration>(curves, config_.calibration.quantile);
    if (slot->empty()) throw ConfigError("null pool too short to calibrate '" + name + "'");
  }
  return slot.get();
}

std::vector<Response> Lab::generate_all(const std::function<void(lm::GenerationConfig&)>& setup,
                                        const lm::LanguageModel& model, bool emoji) {
  std::vector<Response> out(eval_prompts_.size());
  std::optional<attacks::EmojiAttack> attack;
  if (emoji) attack.emplace(*vocab_);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto cfg = generation_config(i);
    if (setup) setup(cfg);
    const auto start = Clock::now();
    const auto tokens = attack ? attack->generate(model, cfg) : lm::generate(model, cfg);
    out[i].text = text::detokenize(tokens, *vocab_);
    out[i].seconds = seconds_since(start);
    out[i].grade = grade(i, out[i].text);
  }
  return out;
}

const std::vector<Response>& Lab::plain_responses() {
  std::lock_guard lock(mutex_);
  if (!have_plain_) {
    plain_ = generate_all({}, *model_, false);
    have_plain_ = true;
  }
  return plain_;
}

const std::vector<Response>& Lab::clean_responses(const std::string& name) {
  std::lock_guard lock(mutex_);
  if (auto it = clean_.find(name); it != clean_.end()) return it->second;
  const auto& s = scheme(name);
  std::vector<Response> out;
  if (s.is_pretext()) {
    out = generate_all([&s](lm::GenerationConfig& cfg) { s.install(cfg); }, *model_, false);
  } else {
    const auto& plain = plain_responses();
    out.resize(plain.size());
    for (std::size_t i = 0; i < plain.size(); ++i) {
      const auto start = Clock::now();
      out[i].text = s.finish(plain[i].text, prompt_seed(i, "inject/" + name));
      out[i].seconds = seconds_since(start);
      out[i].grade = grade(i, out[i].text);
    }
  }
  return clean_.emplace(name, std::move(out)).first->second;
}

const std::vector<Response>& Lab::emoji_responses(const std::string& name) {
  std::lock_guard lock(mutex_);
  if (auto it = emoji_.find(name); it != emoji_.end()) return it->second;
  const auto& s = scheme(name);
  if (!s.is_pretext()) throw Unsupported("emoji attack needs a pre-text scheme");
  auto out = generate_all([&s](lm::GenerationConfig& cfg) { s.install(cfg); }, *model_, true);
  return emoji_.emplace(name, std::move(out)).first->second;
}

std::shared_ptr<const lm::NgramModel> Lab::distilled_model(const std::string& name) {
  std::lock_guard lock(mutex_);
  if (auto it = students_.find(name); it != students_.end()) return it->second;
  const auto& s = scheme(name);
  if (!s.is_pretext()) throw Unsupported("distillation needs a pre-text scheme");
  attacks::DistillOptions options;
  options.mode = distill_mode(name);
  options.prompts = config_.attacks.distill_prompts;
  options.max_tokens = config_.attacks.distill_max_tokens;
  options.seed = derive_seed(config_.seed, {"distill", name});
  auto student = attacks::distill(
      *model_, [&s](lm::GenerationConfig& cfg) { s.install(cfg); }, prompt_tokens_, options);
  return students_.emplace(name, std::move(student)).first->second;
}

attacks::DistillMode Lab::distill_mode(const std::string& name) const {
  if (name == "kgw" || name == "unigram") return attack_spec(attacks::AttackId::kDistill).distill_mode;
  return attacks::DistillMode::kSampleFinetune;
}

const std::vector<Response>& Lab::distill_responses(const std::string& name) {
  std::lock_guard lock(mutex_);
  if (auto it = distill_.find(name); it != distill_.end()) return it->second;
  const auto student = distilled_model(name);
  auto out = generate_all({}, *student, false);
  return distill_.emplace(name, std::move(out)).first->second;
}

}  // namespace wmlab::eval
