#include "wmlab/eval/judge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <regex>

#include "wmlab/common/error.hpp"
#include "wmlab/common/subprocess.hpp"
#include "wmlab/lm/ngram.hpp"
#include "wmlab/text/segment.hpp"
#include "wmlab/text/tokenizer.hpp"
#include "wmlab/text/unicode.hpp"

namespace wmlab::eval {

const std::string_view kJudgeTemplate =
    "<|begin_of_text|><|start_header_id|>system<|end_header_id|>\n\n"
    "You are given a question and a response, and you provide a grade ranging from [0,1] "
    "measuring the quality of the response, in terms of accuracy, level of detail, and "
    "typographical, grammatical, and lexical correctness. Remove points as soon as one of the "
    "criteria is missed.\n\n"
    "### Question: {question}\n\n"
    "### Response: {response}\n\n"
    "<|eot_id|><|start_header_id|>user<|end_header_id|>\n\n"
    "Please provide a grade.\n\n"
    "### Grade:\n\n"
    "<|eot_id|><|start_header_id|>assistant<|end_header_id|>";

std::string render_judge_prompt(std::string_view question, std::string_view response) {
  std::string out(kJudgeTemplate);
  auto replace = [&out](std::string_view key, std::string_view value) {
    const auto at = out.find(key);
    if (at != std::string::npos) out.replace(at, key.size(), value);
  };
  // response first: the question text could itself contain "{response}"
  replace("{response}", response);
  replace("{question}", question);
  return out;
}

ProxyJudge::ProxyJudge(lm::LanguageModelHandle reference, std::unordered_set<std::string> lexicon)
    : reference_(std::move(reference)), lexicon_(std::move(lexicon)) {
  if (!reference_) throw ConfigError("proxy judge needs a reference model");
}

double ProxyJudge::fluency(std::string_view question, std::string_view response) const {
  const auto& vocab = reference_->vocab();
  const auto context = text::tokenize_lenient(question, vocab);
  std::size_t skipped = 0;
  const auto answer = text::tokenize_lenient(response, vocab, &skipped);
  const std::size_t n = answer.size() + skipped;
  if (n == 0) return 0.0;
  const double cap = std::log(static_cast<double>(vocab.size()));
  const auto* ngram = dynamic_cast<const lm::NgramModel*>(reference_.get());

  std::vector<text::TokenId> history(context.ids);
  history.reserve(history.size() + answer.size());
  double nll = cap * static_cast<double>(skipped);  // characters the model cannot see
  lm::NextTokenDistribution probs;
  for (text::TokenId id : answer.ids) {
    double p;
    if (ngram) {
      p = ngram->probability(history, id);
    } else {
      reference_->distribution(history, probs);
      p = probs[id];
    }
    nll += p > 0.0 ? std::min(cap, -std::log(p)) : cap;
    history.push_back(id);
  }
  return 1.0 - nll / (cap * static_cast<double>(n));
}

double ProxyJudge::lexicon_fraction(std::string_view response) const {
  const text::SegmentedText seg(response);
  std::size_t words = 0, known = 0;
  for (const auto& s : seg.spans) {
    if (s.kind != text::SpanKind::kWord) continue;
    ++words;
    if (lexicon_.contains(text::encode_utf8(text::to_lower(seg.view(s))))) ++known;
  }
  return words == 0 ? 0.0 : static_cast<double>(known) / static_cast<double>(words);
}

double ProxyJudge::well_formed_fraction(std::string_view response) {
  const text::SegmentedText seg(response);
  std::size_t words = 0, good = 0;
  for (const auto& s : seg.spans) {
    if (s.kind != text::SpanKind::kWord) continue;
    ++words;
    const auto w = seg.view(s);
    bool letters = true, digits = true, inner_upper = false, all_upper = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const char32_t c = w[i];
      const bool digit = c >= U'0' && c <= U'9';
      const bool apostrophe = text::is_apostrophe(c);
      if (digit) letters = false;
      if (!digit) digits = false;
      if (apostrophe) continue;
      if (!text::is_upper(c)) all_upper = false;
      if (i > 0 && text::is_upper(c)) inner_upper = true;
    }
    if (digits || (letters && (!inner_upper || all_upper))) ++good;
  }
  return words == 0 ? 0.0 : static_cast<double>(good) / static_cast<double>(words);
}

double ProxyJudge::grade(std::string_view question, std::string_view response) const {
  if (response.empty()) return 0.0;
  const double g = 0.5 * fluency(question, response) + 0.3 * lexicon_fraction(response) +
                   0.2 * well_formed_fraction(response);
  return std::clamp(g, 0.0, 1.0);
}

ExternalJudge::ExternalJudge(std::string command, std::chrono::milliseconds timeout)
    : command_(std::move(command)), timeout_(timeout) {
  if (command_.empty()) throw ConfigError("external judge needs a command");
}

double ExternalJudge::grade(std::string_view question, std::string_view response) const {
  const auto result = run_command(command_, render_judge_prompt(question, response), timeout_);
  if (result.timed_out) throw JudgeFailed("judge command timed out");
  if (!result.ok()) throw JudgeFailed("judge command exited with status " + std::to_string(result.exit_code));
  static const std::regex number(R"([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)");
  std::smatch m;
  if (!std::regex_search(result.out, m, number)) throw JudgeFailed("judge output has no grade");
  const double g = std::strtod(m.str().c_str(), nullptr);
  if (!(g >= 0.0 && g <= 1.0)) throw JudgeFailed("judge grade outside [0,1]: " + m.str());
  return g;
}

}  // namespace wmlab::eval
