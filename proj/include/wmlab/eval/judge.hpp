#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>

#include "wmlab/lm/model.hpp"

namespace wmlab::eval {

/// Grades a response to a question in [0, 1].
class QualityJudge {
 public:
  virtual ~QualityJudge() = default;
  virtual std::string_view backend() const = 0;
  virtual double grade(std::string_view question, std::string_view response) const = 0;
};

/// Built-in proxy grade:
///   0.5 * (1 - mean per-token NLL / ln|V|, each NLL capped at ln|V|)
/// + 0.3 * fraction of words found in the reference lexicon
/// + 0.2 * fraction of well-formed words.
/// The NLL is taken under the clean reference model with the question as
/// context. An empty response grades 0.
class ProxyJudge final : public QualityJudge {
 public:
  ProxyJudge(lm::LanguageModelHandle reference, std::unordered_set<std::string> lexicon);

  std::string_view backend() const override { return "builtin-proxy"; }
  double grade(std::string_view question, std::string_view response) const override;

  double fluency(std::string_view question, std::string_view response) const;
  double lexicon_fraction(std::string_view response) const;
  static double well_formed_fraction(std::string_view response);

 private:
  lm::LanguageModelHandle reference_;
  std::unordered_set<std::string> lexicon_;
};

/// Evaluation prompt handed to an external judge; {question} and
/// {response} are substituted.
extern const std::string_view kJudgeTemplate;

std::string render_judge_prompt(std::string_view question, std::string_view response);

/// Runs `command` with the rendered prompt on stdin and reads the first
/// number on stdout. Failures, timeouts or a grade outside [0,1] throw
/// JudgeFailed.
class ExternalJudge final : public QualityJudge {
 public:
  explicit ExternalJudge(std::string command,
                         std::chrono::milliseconds timeout = std::chrono::seconds(60));

  std::string_view backend() const override { return "external"; }
  double grade(std::string_view question, std::string_view response) const override;

 private:
  std::string command_;
  std::chrono::milliseconds timeout_;
};

}  // namespace wmlab::eval
