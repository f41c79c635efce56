#include "cogforge/metrics.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace cogforge {

bool grade(std::optional<char> predicted, char gold) {
  if (!predicted) return false;
  return std::toupper(static_cast<unsigned char>(*predicted)) ==
         std::toupper(static_cast<unsigned char>(gold));
}

std::string format_percent(const CellCount& cell) {
  if (cell.total == 0) return "--";
  // Integer half-up rounding of 100 * correct/total to 2 decimals.
  const long long scaled = (cell.correct * 20000 + cell.total) / (2 * cell.total);
  std::ostringstream out;
  out << scaled / 100 << "." << std::setw(2) << std::setfill('0') << scaled % 100;
  return out.str();
}

EvalReport qa_accuracy(const std::vector<GradedResult>& results) {
  EvalReport report;
  for (const auto& result : results) {
    if (result.setting == Setting::translation) {
      ++report.excluded_translation;
      continue;
    }
    auto& cell = report.per_setting[result.setting];
    ++cell.total;
    ++report.overall.total;
    if (result.correct) {
      ++cell.correct;
      ++report.overall.correct;
    }
  }
  if (report.overall.total == 0) {
    throw Error(ErrorKind::empty_run, "no gradable results (translation items are excluded)");
  }
  return report;
}

namespace {

/// The 8 symmetries of the grid about its center: 4 quarter turns, each
/// optionally mirrored. Quarter-turn clockwise maps (x, y) to (9-y, x).
GridPos apply_symmetry(GridPos p, int rotation, bool mirrored) {
  if (mirrored) p = {kGridSize - 1 - p.x, p.y};
  for (int r = 0; r < rotation; ++r) {
    p = {kGridSize - 1 - p.y, p.x};
  }
  return p;
}

struct PairScores {
  double recall = 0.0;
  double precision = 0.0;
  double position = 0.0;
  double facing = 0.0;
  double isomorphic = 0.0;
};

PairScores score_pair(const CognitiveMap& predicted, const CognitiveMap& gold) {
  PairScores scores;

  struct Match {
    const MapObject* gold_obj;
    const MapObject* pred_obj;
  };
  std::vector<Match> matches;
  size_t matched = 0;
  for (const auto& gold_obj : gold.objects) {
    if (const MapObject* pred_obj = predicted.find_object(gold_obj.name)) {
      matches.push_back({&gold_obj, pred_obj});
      ++matched;
    }
  }
  if (!gold.objects.empty()) {
    scores.recall = static_cast<double>(matched) / static_cast<double>(gold.objects.size());
  }
  if (!predicted.objects.empty()) {
    size_t hits = 0;
    for (const auto& pred_obj : predicted.objects) {
      if (gold.find_object(pred_obj.name) != nullptr) ++hits;
    }
    scores.precision = static_cast<double>(hits) / static_cast<double>(predicted.objects.size());
  }

  if (!matches.empty()) {
    for (int rotation = 0; rotation < 4; ++rotation) {
      for (const bool mirrored : {false, true}) {
        size_t exact = 0;
        for (const auto& m : matches) {
          if (apply_symmetry(m.pred_obj->position, rotation, mirrored) == m.gold_obj->position) {
            ++exact;
          }
        }
        const double fraction = static_cast<double>(exact) / static_cast<double>(matches.size());
        if (rotation == 0 && !mirrored) scores.position = fraction;
        scores.isomorphic = std::max(scores.isomorphic, fraction);
      }
    }
  }

  // Facing agreement over matched entries that carry a gold facing; views
  // match by name like objects do. Pairs with no facing-bearing matches are
  // vacuously perfect.
  size_t facing_total = 0;
  size_t facing_hits = 0;
  for (const auto& m : matches) {
    if (!m.gold_obj->facing) continue;
    ++facing_total;
    if (m.pred_obj->facing && *m.pred_obj->facing == *m.gold_obj->facing) ++facing_hits;
  }
  for (const auto& gold_view : gold.views) {
    const auto pred_view =
        std::find_if(predicted.views.begin(), predicted.views.end(),
                     [&](const MapView& v) { return names_equal(v.name, gold_view.name); });
    if (pred_view == predicted.views.end()) continue;
    ++facing_total;
    if (pred_view->facing == gold_view.facing) ++facing_hits;
  }
  scores.facing = facing_total == 0
                      ? 1.0
                      : static_cast<double>(facing_hits) / static_cast<double>(facing_total);
  return scores;
}

}  // namespace

GraphMetrics cogmap_metrics(const std::vector<CogmapPair>& pairs) {
  GraphMetrics metrics;
  if (pairs.empty()) return metrics;

  double valid = 0, recall = 0, precision = 0, position = 0, facing = 0, isomorphic = 0;
  for (const auto& pair : pairs) {
    if (!pair.predicted) continue;  // invalid prediction scores 0 everywhere
    valid += 1.0;
    const PairScores scores = score_pair(*pair.predicted, pair.gold);
    recall += scores.recall;
    precision += scores.precision;
    position += scores.position;
    facing += scores.facing;
    isomorphic += scores.isomorphic;
  }
  const double n = static_cast<double>(pairs.size());
  metrics.validity = valid / n;
  metrics.object_recall = recall / n;
  metrics.object_precision = precision / n;
  metrics.position_match = position / n;
  metrics.facing_match = facing / n;
  metrics.isomorphic_score = isomorphic / n;
  return metrics;
}

namespace {

constexpr std::array<Setting, 3> kReportSettings = {Setting::rotation, Setting::among,
                                                    Setting::around};

std::string cell_text(const EvalReport& report, Setting setting) {
  const auto it = report.per_setting.find(setting);
  if (it == report.per_setting.end()) return "--";
  return format_percent(it->second);
}

}  // namespace

std::string render_table(const std::vector<std::pair<std::string, EvalReport>>& rows) {
  size_t method_width = std::string("Method").size();
  for (const auto& [label, report] : rows) {
    method_width = std::max(method_width, label.size());
  }
  const std::array<const char*, 4> headers = {"Overall", "Rotation", "Among", "Around"};

  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(method_width)) << "Method";
  for (const auto* header : headers) {
    out << "  " << std::right << std::setw(8) << header;
  }
  out << "\n";
  for (const auto& [label, report] : rows) {
    out << std::left << std::setw(static_cast<int>(method_width)) << label;
    const std::array<std::string, 4> cells = {
        format_percent(report.overall),
        cell_text(report, Setting::rotation),
        cell_text(report, Setting::among),
        cell_text(report, Setting::around),
    };
    for (const auto& cell : cells) {
      out << "  " << std::right << std::setw(8) << cell;
    }
    out << "\n";
  }
  return out.str();
}

std::string render_table(const EvalReport& report, const std::string& label) {
  return render_table({{label, report}});
}

nlohmann::ordered_json report_to_json(const EvalReport& report) {
  nlohmann::ordered_json doc;
  doc["overall"] = format_percent(report.overall);
  nlohmann::ordered_json per_setting;
  for (const auto setting : kReportSettings) {
    per_setting[setting_name(setting)] = cell_text(report, setting);
  }
  doc["per_setting"] = per_setting;
  if (report.graph) {
    nlohmann::ordered_json graph;
    graph["validity"] = report.graph->validity;
    graph["object_recall"] = report.graph->object_recall;
    graph["object_precision"] = report.graph->object_precision;
    graph["position_match"] = report.graph->position_match;
    graph["facing_match"] = report.graph->facing_match;
    graph["isomorphic_score"] = report.graph->isomorphic_score;
    doc["graph"] = graph;
  } else {
    doc["graph"] = nullptr;
  }
  nlohmann::ordered_json counts;
  counts["overall"] = {{"correct", report.overall.correct}, {"total", report.overall.total}};
  for (const auto setting : kReportSettings) {
    const auto it = report.per_setting.find(setting);
    const CellCount cell = it == report.per_setting.end() ? CellCount{} : it->second;
    counts[setting_name(setting)] = {{"correct", cell.correct}, {"total", cell.total}};
  }
  if (report.excluded_translation > 0) {
    counts["excluded_translation"] = report.excluded_translation;
  }
  doc["counts"] = counts;
  return doc;
}

}  // namespace cogforge
