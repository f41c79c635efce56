#include "cogforge/oracle.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <regex>

namespace cogforge {

namespace {

const MapView& view_at(const CognitiveMap& map, int view_index) {
  if (view_index < 1 || static_cast<size_t>(view_index) > map.views.size()) {
    throw Error(ErrorKind::range, "view index " + std::to_string(view_index) + " out of range (map has " +
                                      std::to_string(map.views.size()) + " views)");
  }
  return map.views[static_cast<size_t>(view_index) - 1];
}

struct RayHit {
  const MapObject* object;
  int distance;
};

/// Objects on the ray from origin along dir, sorted by distance (>0).
std::vector<RayHit> ray_hits(const CognitiveMap& map, GridPos origin, GridVec dir) {
  std::vector<RayHit> hits;
  for (const auto& obj : map.objects) {
    const int dx = obj.position.x - origin.x;
    const int dy = obj.position.y - origin.y;
    if (dx * dir.dy - dy * dir.dx != 0) continue;  // off the ray line
    const int t = dx * dir.dx + dy * dir.dy;
    if (t > 0) hits.push_back({&obj, t});
  }
  std::stable_sort(hits.begin(), hits.end(),
                   [](const RayHit& a, const RayHit& b) { return a.distance < b.distance; });
  return hits;
}

int l1_distance(GridPos a, GridPos b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

const MapObject* require_anchor(const CognitiveMap& map, const Question& q) {
  const MapObject* anchor = map.find_object(q.anchor);
  if (anchor == nullptr) {
    throw Error(ErrorKind::unanswerable, "anchor \"" + q.anchor + "\" is not in the map");
  }
  return anchor;
}

std::optional<std::string> beyond_anchor(const CognitiveMap& map, const MapView& view,
                                         const std::string& anchor_name) {
  const auto hits = ray_hits(map, view.position, facing_vector(view.facing));
  for (size_t i = 0; i < hits.size(); ++i) {
    if (names_equal(hits[i].object->name, anchor_name)) {
      return i + 1 < hits.size() ? std::optional(hits[i + 1].object->name) : std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<std::string> resolve_behind_viewer(const CognitiveMap& map, const Question& q) {
  const MapView& view = view_at(map, q.view_index);
  // Prefer the template's opposite-view rule: a view facing the half turn
  // whose position is the viewer mirrored through the anchor.
  if (!q.anchor.empty()) {
    if (const MapObject* anchor = map.find_object(q.anchor)) {
      const GridPos mirrored{2 * anchor->position.x - view.position.x,
                             2 * anchor->position.y - view.position.y};
      const Facing opposite_facing = turn(view.facing, 2);
      for (const auto& other : map.views) {
        if (other.facing == opposite_facing && other.position == mirrored) {
          if (auto name = beyond_anchor(map, other, anchor->name)) return name;
          break;  // opposite view exists but sees nothing beyond the anchor
        }
      }
    }
  }
  return object_in_direction(map, view.facing, view.position, Direction::behind);
}

}  // namespace

std::optional<std::string> object_in_direction(const CognitiveMap& map, Facing viewer_facing,
                                               GridPos from, Direction dir,
                                               const std::string& exclude_name) {
  const MapObject* best = nullptr;
  int best_distance = std::numeric_limits<int>::max();
  bool tied = false;
  for (const auto& obj : map.objects) {
    if (!exclude_name.empty() && names_equal(obj.name, exclude_name)) continue;
    if (obj.position == from) continue;
    const auto rel = relative_direction(viewer_facing, from, obj.position);
    if (rel != dir) continue;
    const int d = l1_distance(from, obj.position);
    if (d < best_distance) {
      best = &obj;
      best_distance = d;
      tied = false;
    } else if (d == best_distance) {
      tied = true;
    }
  }
  if (best == nullptr) return std::nullopt;
  if (tied) {
    throw Error(ErrorKind::ambiguity, "two objects tie " + std::string(direction_name(dir)) +
                                          " at distance " + std::to_string(best_distance));
  }
  return best->name;
}

std::optional<std::string> front_object(const CognitiveMap& map, int view_index) {
  const MapView& view = view_at(map, view_index);
  const auto hits = ray_hits(map, view.position, facing_vector(view.facing));
  if (hits.size() < 2) return std::nullopt;
  return hits[1].object->name;
}

std::optional<std::string> looked_at_object(const CognitiveMap& map, int view_index) {
  const MapView& view = view_at(map, view_index);
  const auto hits = ray_hits(map, view.position, facing_vector(view.facing));
  if (hits.empty()) return std::nullopt;
  return hits[0].object->name;
}

std::optional<int> opposite_view(const CognitiveMap& map, int view_index) {
  const MapView& view = view_at(map, view_index);
  const Facing wanted = turn(view.facing, 2);
  for (size_t i = 0; i < map.views.size(); ++i) {
    if (map.views[i].facing == wanted) return static_cast<int>(i) + 1;
  }
  return std::nullopt;
}

std::optional<std::string> resolve_question(const CognitiveMap& map, const Question& q) {
  switch (q.kind) {
    case QuestionKind::front_object_in_view: {
      const MapView& view = view_at(map, q.view_index);
      return beyond_anchor(map, view, require_anchor(map, q)->name);
    }
    case QuestionKind::relative_to_anchor_from_view: {
      if (!q.direction) {
        throw Error(ErrorKind::unanswerable, "relative question without a direction");
      }
      const MapView& view = view_at(map, q.view_index);
      const MapObject* anchor = require_anchor(map, q);
      return object_in_direction(map, view.facing, anchor->position, *q.direction, anchor->name);
    }
    case QuestionKind::behind_viewer_from_view:
      return resolve_behind_viewer(map, q);
  }
  throw Error(ErrorKind::unanswerable, "unknown question kind");
}

char answer_question(const CognitiveMap& map, const Question& q) {
  const auto name = resolve_question(map, q);
  if (name) {
    for (const auto& opt : q.options) {
      if (names_equal(opt.text, *name)) return opt.letter;
    }
    throw Error(ErrorKind::unanswerable, "computed object \"" + *name + "\" is not among the options");
  }
  for (const auto& opt : q.options) {
    if (names_equal(opt.text, "none of the above")) return opt.letter;
  }
  throw Error(ErrorKind::unanswerable, "no object in the queried direction and no catch-all option");
}

namespace {

const std::array<const char*, 4> kOrdinals = {"first", "second", "third", "fourth"};

std::optional<int> match_view_index(const std::string& lowered) {
  static const std::regex numbered(R"((?:image|view)\s+(\d+))");
  std::smatch m;
  if (std::regex_search(lowered, m, numbered)) return std::stoi(m[1].str());
  static const std::regex ordinal(R"((first|second|third|fourth)\s+(?:image|view))");
  if (std::regex_search(lowered, m, ordinal)) {
    for (size_t i = 0; i < kOrdinals.size(); ++i) {
      if (m[1].str() == kOrdinals[i]) return static_cast<int>(i) + 1;
    }
  }
  return std::nullopt;
}

}  // namespace

Question parse_question(const std::string& question_text, const CognitiveMap& map,
                        const std::vector<SceneOption>& options) {
  Question q;
  q.options = options;
  const std::string lowered = to_lower(question_text);

  const auto view_index = match_view_index(lowered);
  if (!view_index) {
    throw Error(ErrorKind::unparseable_question, "no view reference in \"" + question_text + "\"");
  }
  q.view_index = *view_index;

  // Longest object name mentioned in the question is the anchor.
  std::string anchor;
  for (const auto& obj : map.objects) {
    const std::string name = to_lower(trim(obj.name));
    if (!name.empty() && lowered.find(name) != std::string::npos && name.size() > anchor.size()) {
      anchor = obj.name;
    }
  }
  q.anchor = anchor;

  static const std::regex behind_viewer(R"(behind\s+(?:me|you|the\s+(?:viewer|camera)))");
  if (std::regex_search(lowered, behind_viewer)) {
    q.kind = QuestionKind::behind_viewer_from_view;
    return q;
  }

  if (anchor.empty()) {
    throw Error(ErrorKind::unparseable_question, "no known object named in \"" + question_text + "\"");
  }
  q.kind = QuestionKind::relative_to_anchor_from_view;

  // Phrase -> grid direction, judged from the viewer's seat: an object
  // "behind" the anchor is further along the facing (front), one "in front
  // of" the anchor is nearer (behind).
  static const std::regex left_of(R"((?:on|to|at)\s+the\s+left(?:\s+side)?\s+of|left\s+of)");
  static const std::regex right_of(R"((?:on|to|at)\s+the\s+right(?:\s+side)?\s+of|right\s+of)");
  static const std::regex front_of(R"(in\s+front\s+of)");
  static const std::regex behind_of(R"(behind)");
  if (std::regex_search(lowered, left_of)) {
    q.direction = Direction::left;
  } else if (std::regex_search(lowered, right_of)) {
    q.direction = Direction::right;
  } else if (std::regex_search(lowered, front_of)) {
    q.direction = Direction::behind;
  } else if (std::regex_search(lowered, behind_of)) {
    q.direction = Direction::front;
  } else {
    throw Error(ErrorKind::unparseable_question, "no direction phrase in \"" + question_text + "\"");
  }
  return q;
}

}  // namespace cogforge
