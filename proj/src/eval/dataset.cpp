#include "wmlab/eval/dataset.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "wmlab/common/error.hpp"

namespace wmlab::eval {

PromptDataset PromptDataset::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open prompt dataset " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("prompt dataset " + path.string() + ": " + e.what());
  }
  if (!doc.is_array() || doc.empty()) throw ConfigError("prompt dataset must be a non-empty JSON list");
  PromptDataset ds;
  ds.name = path.stem().string();
  std::set<std::string> ids;
  for (const auto& rec : doc) {
    if (!rec.is_object() || !rec.contains("id") || !rec.contains("instruction") ||
        !rec["id"].is_string() || !rec["instruction"].is_string()) {
      throw ConfigError("prompt records need string fields 'id' and 'instruction'");
    }
    PromptItem item{rec["id"].get<std::string>(), rec["instruction"].get<std::string>()};
    if (!ids.insert(item.id).second) throw ConfigError("duplicate prompt id '" + item.id + "'");
    ds.items.push_back(std::move(item));
  }
  return ds;
}

PromptDataset PromptDataset::head(std::size_t n) const {
  PromptDataset out{name, items};
  if (n != 0 && n < out.items.size()) out.items.resize(n);
  return out;
}

}  // namespace wmlab::eval
