#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cogforge/scene.hpp"

namespace cogforge {

struct LineError {
  int line = 0;  // 1-based
  std::string message;
};

/// Result of loading one JSONL file. Items preserve file order; every item
/// passed validation. Malformed lines are recorded, never fatal, so
/// items.size() + line_errors.size() equals the number of nonblank lines.
struct DatasetFile {
  std::string path;
  std::vector<SceneItem> items;
  std::vector<nlohmann::ordered_json> raw_items;  // parallel to items, extra fields preserved
  std::vector<LineError> line_errors;
};

/// Derive the setting from delimiter-separated id tokens ("_", "-", "/").
/// Matching is case-insensitive and exact per token; zero or multiple
/// distinct setting tokens is an unparseable-setting error.
Setting parse_setting(const std::string& item_id);

/// Validate one decoded JSON object against the scene-item schema.
/// Accepted fields: id, images, meta_info{objects, camera|relations},
/// question, options, gt_answer (alias answer).
SceneItem validate_item(const nlohmann::ordered_json& record);

/// Load and validate a JSONL file. Unreadable path is an io error; content
/// problems are recorded per line. Callers that need at least one item
/// (the CLI pipeline does) enforce that separately via require_items.
DatasetFile load_items(const std::string& path);

/// Throws empty-dataset if the file produced no valid items.
const DatasetFile& require_items(const DatasetFile& dataset);

}  // namespace cogforge
