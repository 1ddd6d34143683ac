#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wmlab/attacks/noise.hpp"

namespace wmlab::eval {

/// Everything a run needs, read from a TOML file. Relative paths are
/// resolved against the directory of the file. Key material is kept as hex
/// text and only turned into keys when schemes are built.
struct LabConfig {
  std::uint64_t seed = 20240601;

  struct Data {
    std::filesystem::path corpus;
    std::filesystem::path prompts;
    std::filesystem::path synonyms;
    std::filesystem::path contractions;
    std::filesystem::path misspellings;
    std::filesystem::path vocabulary;  // empty: built from the corpus
  } data;

  struct Model {
    std::size_t order = 1;
    double alpha = 0.1;
    std::size_t max_tokens = 200;
  } model;

  struct Calibration {
    std::size_t samples = 1000;
    double quantile = 0.95;
    double pool_factor = 2.0;  // null texts are pool_factor * max_tokens long
  } calibration;

  struct Evaluation {
    std::size_t prompts = 200;
    bool keep_texts = false;
    std::vector<std::string> schemes;  // empty: all
    std::vector<std::string> attacks;  // empty: all
  } evaluation;

  struct Kgw {
    double gamma = 0.25;
    double delta = 2.0;
    std::size_t prefix_h = 1;
    std::string key;
  } kgw, unigram;

  struct Hashed {
    std::size_t prefix_h = 4;
    std::string key;
  } exponential, convert;

  struct Inverse {
    std::size_t m = 0;  // 0: four times the longest generation
    std::size_t shifts = 2;
    std::size_t band = 64;
    std::string key;
  } inverse;

  struct Whitemark {
    char32_t mark = 0x2004;
    double replace_prob = 0.6;
  } whitemark;

  struct Unispach {
    std::vector<char32_t> codepoints{0x2000, 0x2001, 0x2004, 0x2006,
                                     0x2007, 0x2008, 0x2009, 0x200A};
    double replace_prob = 0.6;
  } unispach;

  struct Linguistic {
    double similarity_threshold = 0.5;
    std::size_t max_candidates = 8;
    std::string key;
  } linguistic;

  struct Attacks {
    double misspelling_p = 0.05;
    double typo_p = 0.05;
    double synonym_p = 0.1;
    double token_p = 0.05;
    std::string token_mode = "replace";
    attacks::ModifyParams modify{0.05, 0.05, 0.0};
    std::string paraphrase_command;
    std::string translation_command;
    double rewrite_timeout_s = 60.0;
    double rewrite_synonym_p = 0.3;
    std::string kgw_distill_mode = "logit-match";
    std::size_t distill_prompts = 500;
    std::size_t distill_max_tokens = 200;
    std::size_t lexicon_size = 1000;
  } attacks;

  struct Grid {
    bool enabled = false;
    std::vector<std::string> schemes{"kgw", "exponential"};
    std::vector<std::string> attacks{"misspelling", "typo", "modify", "token"};
    std::vector<double> strengths{0.0, 0.05, 0.1, 0.2};
  } grid;

  struct Judge {
    std::string command;  // empty: built-in proxy
    double timeout_s = 60.0;
  } judge;

  struct Imperceptibility {
    bool enabled = true;
    std::string command;  // empty: built-in heuristic
    std::size_t rare_max_count = 2;
    double z_threshold = 3.0;
  } imperceptibility;

  /// Throws ConfigError on syntax errors, unknown keys or bad values.
  static LabConfig load(const std::filesystem::path& path);
  static LabConfig parse(std::string_view toml_text, const std::filesystem::path& base_dir);

  /// Checks ranges and that every key is present for the enabled schemes.
  void validate() const;
};

/// "U+2004" -> 0x2004.
char32_t parse_codepoint(std::string_view text);

}  // namespace wmlab::eval
