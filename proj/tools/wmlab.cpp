// wmlab: run watermark robustness evaluations on the toy corpus.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wmlab/common/error.hpp"
#include "wmlab/eval/lab.hpp"
#include "wmlab/eval/report.hpp"
#include "wmlab/eval/scenario.hpp"

namespace {

using namespace wmlab;

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

struct RunOptions {
  std::string config;
  std::vector<std::string> schemes;
  std::vector<std::string> attacks;
  bool pairs = false;
  bool no_grid = false;
  bool quiet = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> prompts;
  std::optional<std::size_t> samples;
  bool keep_texts = false;
  std::string out = "wmlab-out";
};

eval::LabConfig load_config(const RunOptions& o) {
  auto cfg = eval::LabConfig::load(o.config);
  if (!o.schemes.empty()) cfg.evaluation.schemes = split_list(o.schemes);
  if (!o.attacks.empty()) cfg.evaluation.attacks = split_list(o.attacks);
  if (o.seed) cfg.seed = *o.seed;
  if (o.prompts) cfg.evaluation.prompts = *o.prompts;
  if (o.samples) cfg.calibration.samples = *o.samples;
  if (o.keep_texts) cfg.evaluation.keep_texts = true;
  if (o.no_grid) cfg.grid.enabled = false;
  cfg.validate();
  return cfg;
}

int run(const RunOptions& o) {
  eval::Lab lab(load_config(o));
  auto log = [&](const std::string& msg) {
    if (!o.quiet) std::cerr << msg << '\n';
  };
  eval::RunReport report;
  report.seed = lab.seed();
  report.prompts = lab.prompts().size();
  report.schemes = lab.scheme_names();
  report.attacks = lab.attack_ids();

  for (const auto& scheme : report.schemes) {
    auto rt = eval::run_roundtrip(lab, scheme);
    log(scheme + ": W=" + eval::format_number(rt.rate) + " FPR=" + eval::format_number(rt.false_positive_rate));
    report.scenarios.push_back(rt.baseline);
    rt.baseline.records.clear();
    report.roundtrips.push_back(std::move(rt));
  }
  for (const auto& scheme : report.schemes) {
    const std::string names[] = {scheme};
    auto results = eval::run_matrix(lab, names, report.attacks, o.pairs);
    log(scheme + ": " + std::to_string(results.size()) + " attack scenarios");
    for (auto& r : results) report.scenarios.push_back(std::move(r));
  }
  if (lab.config().grid.enabled) {
    report.grid = eval::run_grid(lab);
    for (auto& r : report.grid) r.records.clear();
    log("grid: " + std::to_string(report.grid.size()) + " scenarios");
  }
  if (lab.config().imperceptibility.enabled) {
    for (const auto& scheme : report.schemes) {
      report.imperceptibility[scheme] = eval::run_imperceptibility(lab, scheme);
    }
  }
  eval::write_run(o.out, report);
  log("wrote " + o.out);
  return 0;
}

int calibrate(const RunOptions& o) {
  eval::Lab lab(load_config(o));
  nlohmann::json out;
  for (const auto& scheme : lab.scheme_names()) {
    const auto* cal = lab.calibration(scheme);
    out[scheme] = cal ? cal->to_json() : nlohmann::json();
  }
  std::filesystem::create_directories(o.out);
  std::ofstream file(std::filesystem::path(o.out) / "calibration.json", std::ios::binary);
  file << out.dump(2) << '\n';
  if (!file) throw Error("cannot write calibration.json");
  return 0;
}

int report(const std::string& dir, const std::string& format) {
  const auto path = std::filesystem::path(dir) / "scenarios.csv";
  if (format == "csv") {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::cout << in.rdbuf();
  } else {
    std::cout << eval::read_scenarios_csv(path).dump(2) << '\n';
  }
  return 0;
}

void add_common(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--config", o.config, "TOML configuration file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--schemes", o.schemes, "comma-separated scheme ids (default: all)");
  cmd->add_option("--seed", o.seed, "master seed (overrides the config)");
  cmd->add_option("--prompts", o.prompts, "number of evaluation prompts");
  cmd->add_option("--samples", o.samples, "null calibration samples");
  cmd->add_option("--out", o.out, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wmlab: text watermark robustness evaluation"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "generate, attack, detect and grade; write reports");
  add_common(run_cmd, run_opts);
  run_cmd->add_option("--attacks", run_opts.attacks, "comma-separated attack ids (default: all)");
  run_cmd->add_flag("--pairs", run_opts.pairs, "also run every ordered pair of attacks");
  run_cmd->add_flag("--no-grid", run_opts.no_grid, "skip the strength grid");
  run_cmd->add_flag("--keep-texts", run_opts.keep_texts, "store texts in records.jsonl");
  run_cmd->add_flag("--quiet", run_opts.quiet, "no progress output");

  RunOptions cal_opts;
  cal_opts.out = ".";
  auto* cal_cmd = app.add_subcommand("calibrate", "write null calibration cutoffs");
  add_common(cal_cmd, cal_opts);

  std::string report_dir = "wmlab-out";
  std::string format = "csv";
  auto* report_cmd = app.add_subcommand("report", "print scenario results of a run");
  report_cmd->add_option("--in", report_dir, "run output directory");
  report_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return run(run_opts);
    if (*cal_cmd) return calibrate(cal_opts);
    return report(report_dir, format);
  } catch (const wmlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
