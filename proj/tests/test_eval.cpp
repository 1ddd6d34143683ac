#include <cmath>
#include <random>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "wmlab/attacks/noise.hpp"
#include "wmlab/common/calibration.hpp"
#include "wmlab/common/error.hpp"
#include "wmlab/common/subprocess.hpp"
#include "wmlab/eval/config.hpp"
#include "wmlab/eval/dataset.hpp"
#include "wmlab/eval/imperceptibility.hpp"
#include "wmlab/eval/judge.hpp"
#include "wmlab/eval/lab.hpp"
#include "wmlab/eval/metrics.hpp"
#include "wmlab/eval/report.hpp"
#include "wmlab/eval/scenario.hpp"
#include "wmlab/posttext/linguistic.hpp"
#include "wmlab/pretext/kgw.hpp"

using namespace wmlab;
using namespace wmlab::eval;
using attacks::AttackId;
using attacks::AttackSpec;

namespace {

struct KgwCase {
  std::size_t green, length;
  double gamma, z;
};
struct BinomialCase {
  std::size_t ones, n;
  double z;
};
struct QualityCase {
  double q_clean, q_attack, quality;
};
struct RateCase {
  const char* decisions;
  double rate;
};
struct RobustCase {
  double quality, rate, robust;
};
#include "oracles/closed_forms.inc"

std::vector<DetectionReport> reports_from(std::string_view decisions) {
  std::vector<DetectionReport> out;
  for (char c : decisions) {
    if (c == 'U') out.push_back(DetectionReport::undecidable("x", "test"));
    else out.push_back(DetectionReport::decided("x", c == '1' ? 2.0 : 0.0, 1.0, 10));
  }
  return out;
}

std::filesystem::path small_config_path() { return std::filesystem::path(WMLAB_FIXTURE_DIR) / "small.toml"; }

LabConfig small_config() { return LabConfig::load(small_config_path()); }

Lab& small_lab() {
  static Lab lab(small_config());
  return lab;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("wmlab-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

const ScenarioResult* find_chain(const std::vector<ScenarioResult>& results, const std::string& label) {
  for (const auto& r : results) {
    if (r.chain_label() == label) return &r;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("kgw z-score matches the exact table") {
  for (const auto& c : kKgwCases) {
    CHECK_MESSAGE(testing::close_ulps(pretext::kgw_z_score(c.green, c.length, c.gamma), c.z), c.green, "/", c.length);
  }
}

TEST_CASE("binomial z matches the exact table") {
  for (const auto& c : kBinomialCases) {
    CHECK_MESSAGE(testing::close_ulps(posttext::binomial_z(c.ones, c.n), c.z), c.ones, "/", c.n);
  }
}

TEST_CASE("quality combination matches the exact table") {
  for (const auto& c : kQualityCases) {
    CHECK_MESSAGE(testing::close_ulps(quality_combine(c.q_clean, c.q_attack), c.quality), c.q_clean, " ", c.q_attack);
  }
}

TEST_CASE("watermark rate matches the exact table") {
  for (const auto& c : kRateCases) {
    const auto reports = reports_from(c.decisions);
    CHECK_MESSAGE(testing::close_ulps(watermark_rate(reports), c.rate), c.decisions);
  }
}

TEST_CASE("robustness matches the exact table") {
  for (const auto& c : kRobustCases) {
    CHECK_MESSAGE(testing::close_ulps(robustness(c.quality, c.rate), c.robust), c.quality, " ", c.rate);
  }
}

TEST_CASE("metric edge cases") {
  CHECK_THROWS_AS(watermark_rate({}), EmptyInput);
  CHECK_THROWS_AS(robustness_mean({}), EmptyInput);
  CHECK(quality_combine(0.0, 0.5) == 0.0);
  CHECK(quality_combine(0.4, 0.8) == 0.7);  // ratio clamps to 1
  CHECK_THROWS(quality_combine(1.2, 0.5));
  CHECK_THROWS(quality_combine(0.5, -0.1));
  const std::vector<double> scores{0.2, 0.4, 0.9};
  CHECK(robustness_mean(scores) == doctest::Approx(0.5));
  const auto m = MetricBundle::from(0.8, 0.4, 0.5);
  CHECK(m.quality == 0.65);
  CHECK(m.robust == 0.575);
}

TEST_CASE("null calibration on hand-made curves") {
  // Cutoff at length L: nearest-rank quantile of the values at L.
  const std::vector<std::vector<double>> curves{{1, 5, 9}, {2, 6}, {3, 7, 8}, {4}};
  const NullCalibration cal(curves, 0.5);
  CHECK(cal.samples() == 4);
  // Length 3 is reached by two of four samples; length 4 by none.
  CHECK(cal.max_length() == 3);
  CHECK(cal.cutoff(1) == 2.0);  // rank ceil(0.5 * 4) = 2 of {1,2,3,4}
  CHECK(cal.cutoff(2) == 6.0);  // rank 2 of {5,6,7}
  CHECK(cal.cutoff(3) == 8.0);  // rank 1 of {8,9}
  CHECK(cal.cutoff(10) == cal.cutoff(3));
  CHECK_THROWS_AS(cal.cutoff(0), EmptyInput);

  const NullCalibration high(curves, 0.95);
  CHECK(high.cutoff(1) == 4.0);
  const std::vector<std::vector<double>> none;
  CHECK_THROWS_AS(NullCalibration(none, 0.95), ConfigError);
  CHECK_THROWS_AS(NullCalibration(curves, 1.0), ConfigError);
}

TEST_CASE("calibrated decisions hold the false-positive rate on the pool") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> noise;
  std::vector<std::vector<double>> curves(1000);
  for (auto& c : curves) {
    for (int i = 0; i < 20; ++i) c.push_back(noise(rng));
  }
  const NullCalibration cal(curves, 0.95);
  for (std::size_t len = 1; len <= 20; ++len) {
    std::size_t above = 0;
    for (const auto& c : curves) above += c[len - 1] > cal.cutoff(len) ? 1 : 0;
    CHECK(above <= 50);
  }
}

TEST_CASE("config parsing") {
  const auto base = std::filesystem::path(WMLAB_CONFIG_DIR);
  const auto cfg = LabConfig::load(base / "default.toml");
  CHECK(cfg.seed == 20240601);
  CHECK(cfg.kgw.gamma == 0.25);
  CHECK(cfg.whitemark.mark == 0x2004);
  CHECK(cfg.unispach.codepoints.size() == 8);
  CHECK(cfg.data.corpus.is_absolute());
  CHECK(std::filesystem::exists(cfg.data.corpus));
  CHECK_NOTHROW(cfg.validate());

  CHECK_THROWS_AS(LabConfig::parse("bogus = 1\n", base), ConfigError);
  CHECK_THROWS_AS(LabConfig::parse("[model]\nbogus = 1\n", base), ConfigError);
  CHECK_THROWS_AS(LabConfig::parse("[model\n", base), ConfigError);
  CHECK_THROWS_AS(LabConfig::parse("[schemes.whitemark]\nmark = \"2004\"\n", base), ConfigError);
  CHECK_THROWS_AS(LabConfig::load(base / "missing.toml"), ConfigError);

  auto bad = cfg;
  bad.kgw.gamma = 1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.attacks.modify = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.evaluation.schemes = {"nope"};
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  CHECK(parse_codepoint("U+2004") == 0x2004);
  CHECK(parse_codepoint("U+1F600") == 0x1F600);
  CHECK_THROWS_AS(parse_codepoint("U+ZZ"), ConfigError);
  CHECK_THROWS_AS(parse_codepoint("U+110000"), ConfigError);
}

TEST_CASE("prompt dataset") {
  const auto all = PromptDataset::load(testing::data_path("prompts.json"));
  CHECK(all.size() >= 200);
  CHECK(all.head(5).size() == 5);
  CHECK(all.head(0).size() == all.size());
  const auto dir = temp_dir("prompts");
  {
    std::ofstream(dir / "dup.json") << R"([{"id":"a","instruction":"x"},{"id":"a","instruction":"y"}])";
    std::ofstream(dir / "empty.json") << "[]";
  }
  CHECK_THROWS_AS(PromptDataset::load(dir / "dup.json"), ConfigError);
  CHECK_THROWS_AS(PromptDataset::load(dir / "empty.json"), ConfigError);
}

TEST_CASE("subprocess runner") {
  const auto ok = run_command("cat", "hello", std::chrono::seconds(5));
  CHECK(ok.ok());
  CHECK(ok.out == "hello");
  CHECK(run_command("exit 3", "", std::chrono::seconds(5)).exit_code == 3);
  const auto slow = run_command("sleep 5", "", std::chrono::milliseconds(200));
  CHECK(slow.timed_out);
  CHECK_FALSE(slow.ok());
}

TEST_CASE("external judge") {
  CHECK(ExternalJudge("echo 0.7").grade("q", "r") == 0.7);
  CHECK(ExternalJudge("echo 'grade: 1'").grade("q", "r") == 1.0);
  CHECK_THROWS_AS(ExternalJudge("echo 2").grade("q", "r"), JudgeFailed);
  CHECK_THROWS_AS(ExternalJudge("false").grade("q", "r"), JudgeFailed);
  CHECK_THROWS_AS(ExternalJudge("echo none").grade("q", "r"), JudgeFailed);
  CHECK_THROWS_AS(ExternalJudge("sleep 5", std::chrono::milliseconds(200)).grade("q", "r"), JudgeFailed);
  // The prompt reaches the command on stdin.
  const auto prompt = render_judge_prompt("QUESTION", "RESPONSE");
  CHECK(prompt.find("QUESTION") != std::string::npos);
  CHECK(prompt.find("RESPONSE") != std::string::npos);
  CHECK(ExternalJudge("grep -c RESPONSE").grade("q", "RESPONSE") == 1.0);
}

TEST_CASE("proxy judge") {
  auto& lab = small_lab();
  const auto& judge = lab.judge();
  CHECK(judge.backend() == "builtin-proxy");
  const std::string question = lab.prompts().items[0].instruction;
  CHECK(judge.grade(question, "") == 0.0);
  double clean = 0.0, noisy = 0.0;
  for (std::size_t i = 0; i < 20; ++i) {
    const auto& doc = testing::corpus()[i];
    const double g = judge.grade(question, doc);
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
    CHECK(g == judge.grade(question, doc));
    clean += g;
    noisy += judge.grade(question, attacks::attack_typo(doc, 0.3, i));
  }
  CHECK(clean > noisy);
  CHECK(ProxyJudge::well_formed_fraction("fine words here") == 1.0);
  CHECK(ProxyJudge::well_formed_fraction("") == 0.0);
}

TEST_CASE("imperceptibility heuristic") {
  const auto& reference = testing::corpus();
  const HeuristicClassifier classifier(reference, 2, 3.0);
  CHECK(classifier.flags("plain\u2004text"));
  CHECK(classifier.flags("zero\u200Bwidth"));
  CHECK_FALSE(classifier.flags(testing::corpus()[0]));
  CHECK(is_stego_whitespace(0x2004));
  CHECK(is_stego_whitespace(0xFEFF));
  CHECK_FALSE(is_stego_whitespace(U' '));
  CHECK_FALSE(is_stego_whitespace(U'\n'));
  CHECK(classifier.reference_rare_rate() > 0.0);
  CHECK(classifier.reference_rare_rate() < 0.5);
  const std::vector<std::string> none;
  CHECK_THROWS_AS(imperceptibility_probe(none, classifier), EmptyInput);
  const std::vector<std::string> texts{"a\u2004b", testing::corpus()[1], "x\u2009y", testing::corpus()[2]};
  CHECK(imperceptibility_probe(texts, classifier) == 0.5);
}

TEST_CASE("report helpers") {
  CHECK(format_number(0.5) == "0.500000");
  CHECK(format_number(1.0 / 3.0) == "0.333333");
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(text_hash("") == "cbf29ce484222325");
  CHECK(text_hash("a") == "af63dc4c8601ec8c");
}

TEST_CASE("emoji against a post-text scheme is skipped") {
  auto& lab = small_lab();
  AttackSpec spec = lab.attack_spec(AttackId::kEmoji);
  const AttackSpec chain[] = {spec};
  CHECK_THROWS_AS(run_scenario(lab, "whitemark", chain), ScenarioSkipped);
  CHECK(try_scenario(lab, "whitemark", chain).status == ScenarioStatus::kSkipped);
  // Pre-text attacks may only open a chain.
  const AttackSpec late[] = {lab.attack_spec(AttackId::kTypo), spec};
  CHECK(try_scenario(lab, "kgw", late).status != ScenarioStatus::kOk);
}

TEST_CASE("matrix shape and chain order") {
  auto& lab = small_lab();
  const std::vector<std::string> schemes{"kgw"};
  const std::vector<AttackId> ids{AttackId::kTypo, AttackId::kLowercase, AttackId::kSynonym};
  const auto singles = run_matrix(lab, schemes, ids, false);
  CHECK(singles.size() == 3);
  const auto all = run_matrix(lab, schemes, ids, true);
  REQUIRE(all.size() == 3 + 9);
  const auto* ab = find_chain(all, "typo(p=0.05)>lowercase");
  const auto* ba = find_chain(all, "lowercase>typo(p=0.05)");
  REQUIRE(ab != nullptr);
  REQUIRE(ba != nullptr);
  CHECK(find_chain(all, "typo(p=0.05)>typo(p=0.05)") != nullptr);
  for (const auto& r : all) {
    CHECK(r.status == ScenarioStatus::kOk);
    CHECK(r.records.size() == lab.prompts().size());
    CHECK(r.metrics.rate >= 0.0);
    CHECK(r.metrics.rate <= 1.0);
  }
}

TEST_CASE("scenario results are reproducible") {
  const AttackSpec chain[] = {small_lab().attack_spec(AttackId::kModify)};
  Lab other(small_config());
  const auto a = run_scenario(small_lab(), "exponential", chain);
  const auto b = run_scenario(other, "exponential", chain);
  std::ostringstream sa, sb;
  write_scenarios_csv(sa, std::span(&a, 1));
  write_scenarios_csv(sb, std::span(&b, 1));
  CHECK(sa.str() == sb.str());
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i].attacked_hash == b.records[i].attacked_hash);
}

TEST_CASE("round trip on the small setup") {
  auto& lab = small_lab();
  for (const char* scheme : {"kgw", "whitemark", "linguistic"}) {
    const auto rt = run_roundtrip(lab, scheme);
    CHECK(rt.prompts == lab.prompts().size());
    CHECK(rt.rate >= 0.9);
    CHECK(rt.false_positive_rate <= 0.25);
  }
}

TEST_CASE("lowercase leaves format schemes untouched") {
  auto& lab = small_lab();
  const AttackSpec chain[] = {lab.attack_spec(AttackId::kLowercase)};
  for (const char* scheme : {"whitemark", "unispach"}) {
    const auto attacked = run_scenario(lab, scheme, chain);
    const auto clean = run_roundtrip(lab, scheme);
    CHECK(attacked.metrics.rate == clean.rate);
  }
}

TEST_CASE("written reports read back") {
  auto& lab = small_lab();
  RunReport run;
  run.seed = lab.seed();
  run.prompts = lab.prompts().size();
  run.schemes = {"kgw"};
  run.attacks = {AttackId::kTypo};
  auto rt = run_roundtrip(lab, "kgw");
  run.scenarios.push_back(rt.baseline);
  run.roundtrips.push_back(rt);
  const std::vector<std::string> schemes{"kgw"};
  for (auto& r : run_matrix(lab, schemes, run.attacks, true)) run.scenarios.push_back(std::move(r));
  run.imperceptibility["kgw"] = run_imperceptibility(lab, "kgw");
  const auto dir = temp_dir("report");
  write_run(dir, run);
  for (const char* f : {"scenarios.csv", "timings.csv", "matrix_Q.csv", "matrix_W.csv", "records.jsonl",
                        "roundtrip.csv", "imperceptibility.csv", "summary.json"}) {
    CHECK_MESSAGE(std::filesystem::exists(dir / f), f);
  }
  const auto rows = read_scenarios_csv(dir / "scenarios.csv");
  REQUIRE(rows.size() == run.scenarios.size());
  CHECK(rows[0]["attack_chain"] == "none");
  CHECK(rows[1]["scheme"] == "kgw");
  const double avg = robustness_average(run.scenarios, "kgw", true);
  CHECK(avg > 0.0);
  CHECK(avg <= 1.0);
  CHECK(std::isnan(robustness_average(run.scenarios, "inverse", true)));
}
