#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace wmlab::eval {

struct PromptItem {
  std::string id;
  std::string instruction;
};

struct PromptDataset {
  std::string name;
  std::vector<PromptItem> items;

  /// JSON list of {"id", "instruction"} records. Ids must be unique and
  /// the list non-empty.
  static PromptDataset load(const std::filesystem::path& path);

  /// First n items (all if n is 0 or larger than the dataset).
  PromptDataset head(std::size_t n) const;
  std::size_t size() const { return items.size(); }
};

}  // namespace wmlab::eval
