#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wmlab/eval/scenario.hpp"

namespace wmlab::eval {

/// Everything one `run` produces.
struct RunReport {
  std::uint64_t seed = 0;
  std::size_t prompts = 0;
  std::vector<std::string> schemes;
  std::vector<attacks::AttackId> attacks;
  std::vector<RoundTrip> roundtrips;
  std::vector<ScenarioResult> scenarios;  // baseline rows first, then singles and pairs
  std::vector<ScenarioResult> grid;
  std::map<std::string, double> imperceptibility;
};

/// Fixed six-decimal rendering used in every report file.
std::string format_number(double v);
/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(std::string_view v);

void write_scenarios_csv(std::ostream& out, std::span<const ScenarioResult> results);
/// The only report with wall-clock values; excluded from determinism checks.
void write_timings_csv(std::ostream& out, std::span<const ScenarioResult> results);
/// Heatmap of ordered pairs: one block per scheme, rows = first attack,
/// columns = second attack; empty cells for skipped or invalid pairs.
void write_matrix_csv(std::ostream& out, const RunReport& run, bool quality);
void write_records_jsonl(std::ostream& out, std::span<const ScenarioResult> results);
void write_grid_csv(std::ostream& out, std::span<const ScenarioResult> grid);
void write_roundtrip_csv(std::ostream& out, std::span<const RoundTrip> roundtrips);
void write_imperceptibility_csv(std::ostream& out, const std::map<std::string, double>& accuracy);

/// Mean R over the valid single-attack scenarios of a scheme; `text_only`
/// restricts to attacks applied to finished text. NaN when there are none.
double robustness_average(std::span<const ScenarioResult> results, const std::string& scheme,
                          bool text_only);

nlohmann::json summary_json(const RunReport& run);

/// Writes every report file into `dir`, creating it.
void write_run(const std::filesystem::path& dir, const RunReport& run);

/// Reads scenarios.csv back as a list of records.
nlohmann::json read_scenarios_csv(const std::filesystem::path& path);

}  // namespace wmlab::eval
