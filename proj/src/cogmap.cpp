#include "cogforge/cogmap.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cogforge {

namespace {

constexpr GridPos kCenter{5, 5};

// Slot order shared by among surrounding objects and the cardinal camera
// positions: south, west, north, east (camera angle 0, 90, 180, 270).
struct CardinalSlot {
  GridVec offset_unit;  // from the reference cell toward the slot
  Facing view_facing;   // a camera in this slot faces the reference cell
};

constexpr std::array<CardinalSlot, 4> kCardinalSlots = {{
    {{0, 1}, Facing::up},     // 0 degrees: south cell
    {{-1, 0}, Facing::right}, // 90 degrees: west cell
    {{0, -1}, Facing::down},  // 180 degrees: north cell
    {{1, 0}, Facing::left},   // 270 degrees: east cell
}};

int angle_to_slot(int angle_degrees, const std::string& item_id) {
  int a = angle_degrees % 360;
  if (a < 0) a += 360;
  if (a % 90 != 0) {
    throw Error(ErrorKind::layout, "item " + item_id + ": camera angle " +
                                       std::to_string(angle_degrees) + " is not a multiple of 90");
  }
  return a / 90;
}

void require_view_count(const SceneItem& item, size_t view_count) {
  if (view_count != item.images.size()) {
    throw Error(ErrorKind::layout,
                "item " + item.id + ": " + std::to_string(view_count) + " camera angles for " +
                    std::to_string(item.images.size()) + " images");
  }
}

void place_object(CognitiveMap& map, const ObjectSpec& spec, GridPos pos, const std::string& item_id) {
  if (!pos.in_bounds()) {
    throw Error(ErrorKind::layout, "item " + item_id + ": object \"" + spec.name +
                                       "\" falls off the grid at [" + std::to_string(pos.x) + ", " +
                                       std::to_string(pos.y) + "]");
  }
  for (const auto& existing : map.objects) {
    if (existing.position == pos) {
      throw Error(ErrorKind::layout, "item " + item_id + ": objects \"" + existing.name +
                                         "\" and \"" + spec.name + "\" collide at [" +
                                         std::to_string(pos.x) + ", " + std::to_string(pos.y) + "]");
    }
    if (names_equal(existing.name, spec.name)) {
      throw Error(ErrorKind::layout, "item " + item_id + ": duplicate object name \"" + spec.name + "\"");
    }
  }
  map.objects.push_back({spec.name, pos, spec.orientation});
}

std::string view_name(size_t index_zero_based) {
  return "Image " + std::to_string(index_zero_based + 1);
}

CognitiveMap generate_among(const SceneItem& item) {
  if (item.objects.size() < 2 || item.objects.size() > 5) {
    throw Error(ErrorKind::layout, "item " + item.id + ": among supports a center plus 1-4 " +
                                       "surrounding objects, got " + std::to_string(item.objects.size()));
  }
  CognitiveMap map;
  place_object(map, item.objects[0], kCenter, item.id);
  for (size_t i = 1; i < item.objects.size(); ++i) {
    const GridPos pos = kCenter + 3 * kCardinalSlots[i - 1].offset_unit;
    place_object(map, item.objects[i], pos, item.id);
  }
  require_view_count(item, item.camera.angles.size());
  for (size_t i = 0; i < item.camera.angles.size(); ++i) {
    const auto& slot = kCardinalSlots[angle_to_slot(item.camera.angles[i], item.id)];
    map.views.push_back({view_name(i), kCenter + slot.offset_unit, slot.view_facing});
  }
  return map;
}

CognitiveMap generate_around(const SceneItem& item) {
  const size_t n = item.objects.size();
  if (n < 2 || n > 4) {
    throw Error(ErrorKind::layout,
                "item " + item.id + ": around supports 2-4 objects, got " + std::to_string(n));
  }
  CognitiveMap map;
  for (size_t i = 0; i < n; ++i) {
    place_object(map, item.objects[i], GridPos{4 + static_cast<int>(i), 5}, item.id);
  }
  // Line midpoint, rounded half-up for even object counts.
  const GridPos mid{4 + static_cast<int>(n) / 2, 5};
  require_view_count(item, item.camera.angles.size());
  for (size_t i = 0; i < item.camera.angles.size(); ++i) {
    const auto& slot = kCardinalSlots[angle_to_slot(item.camera.angles[i], item.id)];
    const GridPos pos = mid + 2 * slot.offset_unit;
    if (!pos.in_bounds()) {
      throw Error(ErrorKind::layout, "item " + item.id + ": view " + std::to_string(i + 1) +
                                         " falls off the grid");
    }
    map.views.push_back({view_name(i), pos, slot.view_facing});
  }
  return map;
}

CognitiveMap generate_translation(const SceneItem& item) {
  const size_t n = item.objects.size();
  if (n < 2) {
    throw Error(ErrorKind::layout, "item " + item.id + ": translation needs at least 2 objects");
  }
  if (item.camera.relations.size() != n - 1) {
    throw Error(ErrorKind::layout, "item " + item.id + ": " + std::to_string(n) + " objects need " +
                                       std::to_string(n - 1) + " relations, got " +
                                       std::to_string(item.camera.relations.size()));
  }
  CognitiveMap map;
  GridPos pos{5, 5};
  place_object(map, item.objects[0], pos, item.id);
  for (size_t i = 1; i < n; ++i) {
    // relations[i-1] relates objects[i-1] to objects[i]: "a on b" puts a one
    // cell above b, so b sits one cell below a.
    const std::string rel = to_lower(trim(item.camera.relations[i - 1]));
    int step;
    if (rel == "on" || rel == "up" || rel == "above") {
      step = 1;  // previous object is above this one
    } else if (rel == "down" || rel == "down to" || rel == "below" || rel == "under") {
      step = -1;
    } else {
      throw Error(ErrorKind::unsupported_relation,
                  "item " + item.id + ": unknown relation \"" + item.camera.relations[i - 1] + "\"");
    }
    pos = {5, pos.y + step};
    place_object(map, item.objects[i], pos, item.id);
  }
  for (size_t i = 0; i < item.images.size(); ++i) {
    const size_t obj = std::min(i, n - 1);
    map.views.push_back({view_name(i), GridPos{3, map.objects[obj].position.y}, Facing::right});
  }
  return map;
}

CognitiveMap generate_rotation(const SceneItem& item) {
  require_view_count(item, item.camera.angles.size());
  if (item.objects.size() != item.camera.angles.size()) {
    throw Error(ErrorKind::layout, "item " + item.id + ": rotation pairs one focal object per view, got " +
                                       std::to_string(item.objects.size()) + " objects for " +
                                       std::to_string(item.camera.angles.size()) + " views");
  }
  CognitiveMap map;
  std::vector<Facing> facings;
  for (size_t i = 0; i < item.camera.angles.size(); ++i) {
    const Facing f = turn(Facing::up, angle_to_slot(item.camera.angles[i], item.id));
    facings.push_back(f);
    place_object(map, item.objects[i], kCenter + 3 * facing_vector(f), item.id);
  }
  for (size_t i = 0; i < facings.size(); ++i) {
    map.views.push_back({view_name(i), kCenter, facings[i]});
  }
  return map;
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string position_text(GridPos p) {
  return "[" + std::to_string(p.x) + ", " + std::to_string(p.y) + "]";
}

}  // namespace

const char* cogmap_schema_name(CogmapSchema schema) {
  return schema == CogmapSchema::augmented ? "augmented" : "plain";
}

std::optional<CogmapSchema> cogmap_schema_from_name(const std::string& name) {
  const std::string lowered = to_lower(trim(name));
  if (lowered == "augmented") return CogmapSchema::augmented;
  if (lowered == "plain") return CogmapSchema::plain;
  return std::nullopt;
}

CognitiveMap generate_cogmap(const SceneItem& item) {
  switch (item.setting) {
    case Setting::among: return generate_among(item);
    case Setting::around: return generate_around(item);
    case Setting::translation: return generate_translation(item);
    case Setting::rotation: return generate_rotation(item);
  }
  throw Error(ErrorKind::layout, "item " + item.id + ": unknown setting");
}

std::string serialize_augmented(const CognitiveMap& map) {
  std::ostringstream out;
  out << "{\n  \"objects\": [";
  for (size_t i = 0; i < map.objects.size(); ++i) {
    const auto& obj = map.objects[i];
    out << (i == 0 ? "\n" : ",\n");
    out << "    {\"name\": " << json_string(obj.name) << ", \"position\": " << position_text(obj.position);
    if (obj.facing) out << ", \"facing\": " << json_string(facing_name(*obj.facing));
    out << "}";
  }
  out << (map.objects.empty() ? "]" : "\n  ]");
  out << ",\n  \"views\": [";
  for (size_t i = 0; i < map.views.size(); ++i) {
    const auto& view = map.views[i];
    out << (i == 0 ? "\n" : ",\n");
    out << "    {\"name\": " << json_string(view.name) << ", \"position\": " << position_text(view.position)
        << ", \"facing\": " << json_string(facing_name(view.facing)) << "}";
  }
  out << (map.views.empty() ? "]" : "\n  ]");
  out << "\n}";
  return out.str();
}

std::string serialize_plain(const CognitiveMap& map) {
  std::set<std::string> seen;
  for (const auto& obj : map.objects) {
    if (!seen.insert(to_lower(obj.name)).second) {
      throw Error(ErrorKind::schema,
                  "plain schema cannot represent duplicate object name \"" + obj.name + "\"");
    }
  }
  if (map.objects.empty()) return "{}";
  std::ostringstream out;
  out << "{\n";
  for (size_t i = 0; i < map.objects.size(); ++i) {
    const auto& obj = map.objects[i];
    out << "    " << json_string(obj.name) << ": {\"position\": " << position_text(obj.position) << "}";
    out << (i + 1 < map.objects.size() ? ",\n" : "\n");
  }
  out << "}";
  return out.str();
}

std::string serialize_cogmap(const CognitiveMap& map, CogmapSchema schema) {
  return schema == CogmapSchema::augmented ? serialize_augmented(map) : serialize_plain(map);
}

}  // namespace cogforge
