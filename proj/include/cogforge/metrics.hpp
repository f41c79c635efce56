#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cogforge/scene.hpp"

namespace cogforge {

/// Cognitive-map quality over a run, every field in [0,1]. Matching is by
/// exact case-insensitive object name; pair scores are averaged over the
/// run with invalid predictions contributing 0 everywhere but validity's
/// denominator.
struct GraphMetrics {
  double validity = 0.0;          // fraction of parseable predictions
  double object_recall = 0.0;     // gold objects named in the prediction
  double object_precision = 0.0;  // predicted objects present in gold
  double position_match = 0.0;    // matched objects at the exact gold cell
  double facing_match = 0.0;      // matched entries with the gold facing
  double isomorphic_score = 0.0;  // position_match maximized over the 8 grid symmetries
};

struct CellCount {
  long long correct = 0;
  long long total = 0;
};

/// Accuracy report in the shape of the published tables: overall plus the
/// rotation/among/around breakdown, percentages at 2 decimals (half-up).
struct EvalReport {
  CellCount overall;
  std::map<Setting, CellCount> per_setting;
  std::optional<GraphMetrics> graph;
  int excluded_translation = 0;
};

struct GradedResult {
  Setting setting = Setting::among;
  bool correct = false;
};

struct CogmapPair {
  std::optional<CognitiveMap> predicted;  // nullopt when the response had no valid map
  CognitiveMap gold;
};

/// True iff a prediction is present and equals gold, case-insensitively.
bool grade(std::optional<char> predicted, char gold);

/// Exact half-up percentage at 2 decimals, e.g. "52.28"; "--" for an empty
/// cell.
std::string format_percent(const CellCount& cell);

/// Aggregate graded results into the report. Translation results are
/// excluded (counted in excluded_translation); zero usable results is an
/// empty-run error.
EvalReport qa_accuracy(const std::vector<GradedResult>& results);

GraphMetrics cogmap_metrics(const std::vector<CogmapPair>& pairs);

/// Fixed-width table with columns Method, Overall, Rotation, Among, Around.
std::string render_table(const std::vector<std::pair<std::string, EvalReport>>& rows);
std::string render_table(const EvalReport& report, const std::string& label);

/// Machine-readable report: {overall, per_setting, graph, counts}.
nlohmann::ordered_json report_to_json(const EvalReport& report);

}  // namespace cogforge
