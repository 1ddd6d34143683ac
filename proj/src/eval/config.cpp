#include "wmlab/eval/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "wmlab/attacks/attack.hpp"
#include "wmlab/common/error.hpp"
#include "wmlab/eval/schemes.hpp"

namespace wmlab::eval {
namespace {

void only_keys(const toml::table& t, std::string_view where, std::initializer_list<std::string_view> allowed) {
  for (const auto& [k, v] : t) {
    bool ok = false;
    for (auto a : allowed) ok = ok || k.str() == a;
    if (!ok) throw ConfigError("unknown key '" + std::string(k.str()) + "' in [" + std::string(where) + "]");
  }
}

const toml::table* section(const toml::table& root, std::string_view name) {
  const auto* node = root.get(name);
  if (node == nullptr) return nullptr;
  if (!node->is_table()) throw ConfigError("'" + std::string(name) + "' must be a table");
  return node->as_table();
}

template <typename T>
void read(const toml::table& t, std::string_view key, T& out) {
  const auto* node = t.get(key);
  if (node == nullptr) return;
  if constexpr (std::is_same_v<T, bool>) {
    if (auto v = node->value<bool>()) { out = *v; return; }
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (auto v = node->value<std::string>()) { out = *v; return; }
  } else if constexpr (std::is_floating_point_v<T>) {
    if (auto v = node->value<double>()) { out = *v; return; }
  } else if constexpr (std::is_integral_v<T>) {
    if (auto v = node->value<std::int64_t>(); v && *v >= 0) { out = static_cast<T>(*v); return; }
  }
  throw ConfigError("bad value for '" + std::string(key) + "'");
}

void read_path(const toml::table& t, std::string_view key, const std::filesystem::path& base,
               std::filesystem::path& out) {
  std::string s;
  read(t, key, s);
  if (!s.empty()) out = (base / s).lexically_normal();
}

std::vector<std::string> read_strings(const toml::table& t, std::string_view key,
                                      std::vector<std::string> fallback) {
  const auto* node = t.get(key);
  if (node == nullptr) return fallback;
  const auto* arr = node->as_array();
  if (arr == nullptr) throw ConfigError("'" + std::string(key) + "' must be a list of strings");
  std::vector<std::string> out;
  for (const auto& e : *arr) {
    auto v = e.value<std::string>();
    if (!v) throw ConfigError("'" + std::string(key) + "' must be a list of strings");
    out.push_back(*v);
  }
  return out;
}

std::vector<double> read_numbers(const toml::table& t, std::string_view key, std::vector<double> fallback) {
  const auto* node = t.get(key);
  if (node == nullptr) return fallback;
  const auto* arr = node->as_array();
  if (arr == nullptr) throw ConfigError("'" + std::string(key) + "' must be a list of numbers");
  std::vector<double> out;
  for (const auto& e : *arr) {
    auto v = e.value<double>();
    if (!v) throw ConfigError("'" + std::string(key) + "' must be a list of numbers");
    out.push_back(*v);
  }
  return out;
}

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(what) + " must be in [0,1]");
}

}  // namespace

char32_t parse_codepoint(std::string_view text) {
  if (text.size() < 3 || (text.substr(0, 2) != "U+" && text.substr(0, 2) != "u+")) {
    throw ConfigError("codepoint must look like U+2004, got '" + std::string(text) + "'");
  }
  char32_t cp = 0;
  for (char c : text.substr(2)) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw ConfigError("bad codepoint '" + std::string(text) + "'");
    cp = cp * 16 + static_cast<char32_t>(d);
    if (cp > 0x10FFFF) throw ConfigError("codepoint out of range: " + std::string(text));
  }
  return cp;
}

LabConfig LabConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), std::filesystem::absolute(path).parent_path());
}

LabConfig LabConfig::parse(std::string_view toml_text, const std::filesystem::path& base) {
  toml::table root;
  try {
    root = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "config syntax error: " << e.description() << " at line " << e.source().begin.line;
    throw ConfigError(msg.str());
  }
  only_keys(root, "top level",
            {"seed", "data", "model", "calibration", "evaluation", "schemes", "attacks", "grid",
             "judge", "imperceptibility"});
  LabConfig c;
  read(root, "seed", c.seed);

  if (const auto* t = section(root, "data")) {
    only_keys(*t, "data", {"corpus", "prompts", "synonyms", "contractions", "misspellings", "vocabulary"});
    read_path(*t, "corpus", base, c.data.corpus);
    read_path(*t, "prompts", base, c.data.prompts);
    read_path(*t, "synonyms", base, c.data.synonyms);
    read_path(*t, "contractions", base, c.data.contractions);
    read_path(*t, "misspellings", base, c.data.misspellings);
    read_path(*t, "vocabulary", base, c.data.vocabulary);
  }
  if (const auto* t = section(root, "model")) {
    only_keys(*t, "model", {"order", "alpha", "max_tokens"});
    read(*t, "order", c.model.order);
    read(*t, "alpha", c.model.alpha);
    read(*t, "max_tokens", c.model.max_tokens);
  }
  if (const auto* t = section(root, "calibration")) {
    only_keys(*t, "calibration", {"samples", "quantile", "pool_factor"});
    read(*t, "samples", c.calibration.samples);
    read(*t, "quantile", c.calibration.quantile);
    read(*t, "pool_factor", c.calibration.pool_factor);
  }
  if (const auto* t = section(root, "evaluation")) {
    only_keys(*t, "evaluation", {"prompts", "keep_texts", "schemes", "attacks"});
    read(*t, "prompts", c.evaluation.prompts);
    read(*t, "keep_texts", c.evaluation.keep_texts);
    c.evaluation.schemes = read_strings(*t, "schemes", {});
    c.evaluation.attacks = read_strings(*t, "attacks", {});
  }
  if (const auto* s = section(root, "schemes")) {
    only_keys(*s, "schemes",
              {"kgw", "unigram", "exponential", "inverse", "convert", "whitemark", "unispach", "linguistic"});
    for (auto [name, target] : {std::pair<std::string_view, Kgw*>{"kgw", &c.kgw}, {"unigram", &c.unigram}}) {
      if (const auto* t = section(*s, name)) {
        only_keys(*t, name, {"gamma", "delta", "prefix_h", "key"});
        read(*t, "gamma", target->gamma);
        read(*t, "delta", target->delta);
        read(*t, "prefix_h", target->prefix_h);
        read(*t, "key", target->key);
      }
    }
    for (auto [name, target] :
         {std::pair<std::string_view, Hashed*>{"exponential", &c.exponential}, {"convert", &c.convert}}) {
      if (const auto* t = section(*s, name)) {
        only_keys(*t, name, {"prefix_h", "key"});
        read(*t, "prefix_h", target->prefix_h);
        read(*t, "key", target->key);
      }
    }
    if (const auto* t = section(*s, "inverse")) {
      only_keys(*t, "inverse", {"m", "shifts", "band", "key"});
      read(*t, "m", c.inverse.m);
      read(*t, "shifts", c.inverse.shifts);
      read(*t, "band", c.inverse.band);
      read(*t, "key", c.inverse.key);
    }
    if (const auto* t = section(*s, "whitemark")) {
      only_keys(*t, "whitemark", {"mark", "replace_prob"});
      std::string mark;
      read(*t, "mark", mark);
      if (!mark.empty()) c.whitemark.mark = parse_codepoint(mark);
      read(*t, "replace_prob", c.whitemark.replace_prob);
    }
    if (const auto* t = section(*s, "unispach")) {
      only_keys(*t, "unispach", {"codepoints", "replace_prob"});
      if (t->contains("codepoints")) {
        c.unispach.codepoints.clear();
        for (const auto& cp : read_strings(*t, "codepoints", {})) {
          c.unispach.codepoints.push_back(parse_codepoint(cp));
        }
      }
      read(*t, "replace_prob", c.unispach.replace_prob);
    }
    if (const auto* t = section(*s, "linguistic")) {
      only_keys(*t, "linguistic", {"similarity_threshold", "max_candidates", "key"});
      read(*t, "similarity_threshold", c.linguistic.similarity_threshold);
      read(*t, "max_candidates", c.linguistic.max_candidates);
      read(*t, "key", c.linguistic.key);
    }
  }
  if (const auto* t = section(root, "attacks")) {
    only_keys(*t, "attacks",
              {"misspelling_p", "typo_p", "synonym_p", "token_p", "token_mode", "modify",
               "paraphrase_command", "translation_command", "rewrite_timeout_s", "rewrite_synonym_p",
               "kgw_distill_mode", "distill_prompts", "distill_max_tokens", "lexicon_size"});
    auto& a = c.attacks;
    read(*t, "misspelling_p", a.misspelling_p);
    read(*t, "typo_p", a.typo_p);
    read(*t, "synonym_p", a.synonym_p);
    read(*t, "token_p", a.token_p);
    read(*t, "token_mode", a.token_mode);
    if (t->contains("modify")) {
      const auto m = read_numbers(*t, "modify", {});
      if (m.size() != 3) throw ConfigError("'modify' must be [p_dup, p_del, p_repl]");
      a.modify = {m[0], m[1], m[2]};
    }
    read(*t, "paraphrase_command", a.paraphrase_command);
    read(*t, "translation_command", a.translation_command);
    read(*t, "rewrite_timeout_s", a.rewrite_timeout_s);
    read(*t, "rewrite_synonym_p", a.rewrite_synonym_p);
    read(*t, "kgw_distill_mode", a.kgw_distill_mode);
    read(*t, "distill_prompts", a.distill_prompts);
    read(*t, "distill_max_tokens", a.distill_max_tokens);
    read(*t, "lexicon_size", a.lexicon_size);
  }
  if (const auto* t = section(root, "grid")) {
    only_keys(*t, "grid", {"enabled", "schemes", "attacks", "strengths"});
    read(*t, "enabled", c.grid.enabled);
    c.grid.schemes = read_strings(*t, "schemes", c.grid.schemes);
    c.grid.attacks = read_strings(*t, "attacks", c.grid.attacks);
    c.grid.strengths = read_numbers(*t, "strengths", c.grid.strengths);
  }
  if (const auto* t = section(root, "judge")) {
    only_keys(*t, "judge", {"command", "timeout_s"});
    read(*t, "command", c.judge.command);
    read(*t, "timeout_s", c.judge.timeout_s);
  }
  if (const auto* t = section(root, "imperceptibility")) {
    only_keys(*t, "imperceptibility", {"enabled", "command", "rare_max_count", "z_threshold"});
    read(*t, "enabled", c.imperceptibility.enabled);
    read(*t, "command", c.imperceptibility.command);
    read(*t, "rare_max_count", c.imperceptibility.rare_max_count);
    read(*t, "z_threshold", c.imperceptibility.z_threshold);
  }
  c.validate();
  return c;
}

void LabConfig::validate() const {
  if (data.corpus.empty() || data.prompts.empty() || data.synonyms.empty() ||
      data.contractions.empty() || data.misspellings.empty()) {
    throw ConfigError("[data] needs corpus, prompts, synonyms, contractions and misspellings");
  }
  if (model.order < 1 || model.order > 5) throw ConfigError("model order must be in [1,5]");
  if (!(model.alpha > 0.0)) throw ConfigError("model alpha must be positive");
  if (model.max_tokens < 1) throw ConfigError("max_tokens must be at least 1");
  if (calibration.samples < 1) throw ConfigError("calibration needs at least one sample");
  if (!(calibration.quantile > 0.0 && calibration.quantile < 1.0)) {
    throw ConfigError("calibration quantile must be in (0,1)");
  }
  if (!(calibration.pool_factor >= 1.0)) throw ConfigError("pool_factor must be at least 1");
  for (const auto& s : evaluation.schemes) scheme_index(s);
  for (const auto& a : evaluation.attacks) attacks::attack_from_name(a);
  for (const auto& s : grid.schemes) scheme_index(s);
  for (const auto& a : grid.attacks) attacks::attack_from_name(a);
  for (double s : grid.strengths) check_unit(s, "grid strength");
  for (const auto* k : {&kgw, &unigram}) {
    if (!(k->gamma > 0.0 && k->gamma < 1.0)) throw ConfigError("gamma must be in (0,1)");
    if (k->delta < 0.0) throw ConfigError("delta must be non-negative");
  }
  check_unit(whitemark.replace_prob, "whitemark replace_prob");
  check_unit(unispach.replace_prob, "unispach replace_prob");
  check_unit(linguistic.similarity_threshold, "similarity_threshold");
  check_unit(attacks.misspelling_p, "misspelling_p");
  check_unit(attacks.typo_p, "typo_p");
  check_unit(attacks.synonym_p, "synonym_p");
  check_unit(attacks.token_p, "token_p");
  check_unit(attacks.rewrite_synonym_p, "rewrite_synonym_p");
  if (attacks.token_mode != "replace" && attacks.token_mode != "delete" && attacks.token_mode != "insert") {
    throw ConfigError("token_mode must be replace, delete or insert");
  }
  if (attacks.kgw_distill_mode != "logit-match" && attacks.kgw_distill_mode != "sample-finetune") {
    throw ConfigError("kgw_distill_mode must be logit-match or sample-finetune");
  }
  if (attacks.modify.p_dup + attacks.modify.p_del + attacks.modify.p_repl > 1.0) {
    throw ConfigError("modify probabilities sum above 1");
  }
  if (!(attacks.rewrite_timeout_s > 0.0) || !(judge.timeout_s > 0.0)) {
    throw ConfigError("timeouts must be positive");
  }
}

}  // namespace wmlab::eval
