#include "wmlab/eval/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "wmlab/common/error.hpp"

namespace wmlab::eval {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

bool is_ok(const ScenarioResult& r) { return r.status == ScenarioStatus::kOk; }

std::string metric(const ScenarioResult& r, double v) { return is_ok(r) ? format_number(v) : ""; }

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  // avoid "-0.000000"
  if (std::string_view(buf) == "-0.000000") return "0.000000";
  return buf;
}

std::string csv_field(std::string_view v) {
  if (v.find_first_of(",\"\n") == std::string_view::npos) return std::string(v);
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_scenarios_csv(std::ostream& out, std::span<const ScenarioResult> results) {
  out << "scheme,attack_chain,status,q_clean,q_attack,Q,W,R,seed,note\n";
  for (const auto& r : results) {
    out << r.scheme << ',' << csv_field(r.chain_label()) << ',' << status_name(r.status) << ','
        << metric(r, r.metrics.q_clean) << ',' << metric(r, r.metrics.q_attack) << ','
        << metric(r, r.metrics.quality) << ',' << metric(r, r.metrics.rate) << ','
        << metric(r, r.metrics.robust) << ',' << r.seed << ',' << csv_field(r.note) << '\n';
  }
}

void write_timings_csv(std::ostream& out, std::span<const ScenarioResult> results) {
  out << "scheme,attack_chain,prompts,inject_s,attack_s,detect_s\n";
  for (const auto& r : results) {
    if (!is_ok(r)) continue;
    out << r.scheme << ',' << csv_field(r.chain_label()) << ',' << r.records.size() << ','
        << format_number(r.timing.inject_s) << ',' << format_number(r.timing.attack_s) << ','
        << format_number(r.timing.detect_s) << '\n';
  }
}

void write_matrix_csv(std::ostream& out, const RunReport& run, bool quality) {
  out << "scheme,first";
  for (auto b : run.attacks) out << ',' << attacks::attack_name(b);
  out << '\n';
  for (const auto& scheme : run.schemes) {
    std::map<std::pair<attacks::AttackId, attacks::AttackId>, const ScenarioResult*> cells;
    for (const auto& r : run.scenarios) {
      if (r.scheme == scheme && r.chain.size() == 2) cells[{r.chain[0].id, r.chain[1].id}] = &r;
    }
    for (auto a : run.attacks) {
      out << scheme << ',' << attacks::attack_name(a);
      for (auto b : run.attacks) {
        out << ',';
        const auto it = cells.find({a, b});
        if (it != cells.end() && is_ok(*it->second)) {
          out << format_number(quality ? it->second->metrics.quality : it->second->metrics.rate);
        }
      }
      out << '\n';
    }
  }
}

void write_records_jsonl(std::ostream& out, std::span<const ScenarioResult> results) {
  for (const auto& r : results) {
    for (const auto& rec : r.records) {
      nlohmann::json j = {{"scheme", r.scheme},
                          {"attack_chain", r.chain_label()},
                          {"prompt_id", rec.prompt_id},
                          {"clean_hash", rec.clean_hash},
                          {"attacked_hash", rec.attacked_hash},
                          {"q_clean", rec.q_clean},
                          {"q_attack", rec.q_attack},
                          {"detection", rec.detection.to_json()}};
      if (!rec.clean_text.empty() || !rec.attacked_text.empty()) {
        j["clean_text"] = rec.clean_text;
        j["attacked_text"] = rec.attacked_text;
      }
      out << j.dump() << '\n';
    }
  }
}

void write_grid_csv(std::ostream& out, std::span<const ScenarioResult> grid) {
  out << "scheme,attack,strength,status,Q,W,R\n";
  for (const auto& r : grid) {
    const auto& spec = r.chain.front();
    const double strength = spec.id == attacks::AttackId::kModify ? spec.modify.p_dup : spec.p;
    out << r.scheme << ',' << attacks::attack_name(spec.id) << ',' << format_number(strength) << ','
        << status_name(r.status) << ',' << metric(r, r.metrics.quality) << ','
        << metric(r, r.metrics.rate) << ',' << metric(r, r.metrics.robust) << '\n';
  }
}

void write_roundtrip_csv(std::ostream& out, std::span<const RoundTrip> roundtrips) {
  out << "scheme,prompts,W,false_positive_rate,q_clean,calibrated_length\n";
  for (const auto& rt : roundtrips) {
    out << rt.scheme << ',' << rt.prompts << ',' << format_number(rt.rate) << ','
        << format_number(rt.false_positive_rate) << ',' << format_number(rt.q_clean) << ','
        << rt.calibrated_length << '\n';
  }
}

void write_imperceptibility_csv(std::ostream& out, const std::map<std::string, double>& accuracy) {
  out << "scheme,flagged_fraction\n";
  for (const auto& [scheme, acc] : accuracy) out << scheme << ',' << format_number(acc) << '\n';
}

double robustness_average(std::span<const ScenarioResult> results, const std::string& scheme,
                          bool text_only) {
  std::vector<double> scores;
  for (const auto& r : results) {
    if (r.scheme != scheme || r.chain.size() != 1 || !is_ok(r)) continue;
    if (text_only && attacks::is_pretext_attack(r.chain.front().id)) continue;
    scores.push_back(r.metrics.robust);
  }
  if (scores.empty()) return std::numeric_limits<double>::quiet_NaN();
  return robustness_mean(scores);
}

nlohmann::json summary_json(const RunReport& run) {
  nlohmann::json j;
  j["seed"] = run.seed;
  j["prompts"] = run.prompts;
  j["schemes"] = run.schemes;
  auto& names = j["attacks"] = nlohmann::json::array();
  for (auto a : run.attacks) names.push_back(std::string(attacks::attack_name(a)));
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& r : run.scenarios) ++counts[static_cast<int>(r.status)];
  j["scenarios"] = {{"ok", counts[0]}, {"skipped", counts[1]}, {"invalid", counts[2]}};
  for (const auto& rt : run.roundtrips) {
    j["roundtrip"][rt.scheme] = {{"W", rt.rate},
                                 {"false_positive_rate", rt.false_positive_rate},
                                 {"q_clean", rt.q_clean},
                                 {"calibrated_length", rt.calibrated_length}};
  }
  for (const auto& scheme : run.schemes) {
    const double all = robustness_average(run.scenarios, scheme, false);
    const double text = robustness_average(run.scenarios, scheme, true);
    j["robustness"][scheme] = {{"R_A", std::isnan(all) ? nlohmann::json() : nlohmann::json(all)},
                               {"R_A_text_attacks", std::isnan(text) ? nlohmann::json() : nlohmann::json(text)}};
  }
  for (const auto& [scheme, acc] : run.imperceptibility) j["imperceptibility"][scheme] = acc;
  return j;
}

void write_run(const std::filesystem::path& dir, const RunReport& run) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / "scenarios.csv");
    write_scenarios_csv(out, run.scenarios);
  }
  {
    auto out = open_out(dir / "timings.csv");
    write_timings_csv(out, run.scenarios);
  }
  {
    auto out = open_out(dir / "matrix_Q.csv");
    write_matrix_csv(out, run, true);
  }
  {
    auto out = open_out(dir / "matrix_W.csv");
    write_matrix_csv(out, run, false);
  }
  {
    auto out = open_out(dir / "records.jsonl");
    write_records_jsonl(out, run.scenarios);
  }
  {
    auto out = open_out(dir / "roundtrip.csv");
    write_roundtrip_csv(out, run.roundtrips);
  }
  if (!run.grid.empty()) {
    auto out = open_out(dir / "grid.csv");
    write_grid_csv(out, run.grid);
  }
  if (!run.imperceptibility.empty()) {
    auto out = open_out(dir / "imperceptibility.csv");
    write_imperceptibility_csv(out, run.imperceptibility);
  }
  auto out = open_out(dir / "summary.json");
  out << summary_json(run).dump(2) << '\n';
}

nlohmann::json read_scenarios_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(path.string() + " is empty");
  const auto header = split_csv_line(line);
  auto rows = nlohmann::json::array();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) throw Error("malformed row in " + path.string());
    nlohmann::json row;
    for (std::size_t i = 0; i < header.size(); ++i) {
      const auto& h = header[i];
      const auto& f = fields[i];
      const bool numeric = h == "q_clean" || h == "q_attack" || h == "Q" || h == "W" || h == "R";
      if (numeric) {
        row[h] = f.empty() ? nlohmann::json() : nlohmann::json(std::stod(f));
      } else if (h == "seed") {
        row[h] = std::stoull(f);
      } else {
        row[h] = f;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wmlab::eval
