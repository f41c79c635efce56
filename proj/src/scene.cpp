#include "cogforge/scene.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace cogforge {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::io: return "io error";
    case ErrorKind::empty_dataset: return "empty-dataset error";
    case ErrorKind::unparseable_setting: return "unparseable-setting error";
    case ErrorKind::degenerate_input: return "degenerate-input error";
    case ErrorKind::layout: return "layout error";
    case ErrorKind::unsupported_relation: return "unsupported-relation error";
    case ErrorKind::ungroundable_chain: return "ungroundable-chain error";
    case ErrorKind::inconsistency: return "inconsistency error";
    case ErrorKind::composition: return "composition error";
    case ErrorKind::range: return "range error";
    case ErrorKind::unanswerable: return "unanswerable error";
    case ErrorKind::ambiguity: return "ambiguity error";
    case ErrorKind::schema: return "schema error";
    case ErrorKind::invalid_cogmap: return "invalid-cogmap error";
    case ErrorKind::unparseable_question: return "unparseable-question error";
    case ErrorKind::template_error: return "template error";
    case ErrorKind::empty_run: return "empty-run error";
    case ErrorKind::duplicate_id: return "duplicate-id error";
    case ErrorKind::fixture_corruption: return "fixture-corruption error";
  }
  return "error";
}

namespace {
constexpr std::array<const char*, 4> kFacingNames = {"up", "right", "down", "left"};
constexpr std::array<const char*, 4> kSettingNames = {"around", "among", "translation", "rotation"};
constexpr std::array<const char*, 4> kDirectionNames = {"front", "behind", "left", "right"};
}  // namespace

const char* facing_name(Facing f) { return kFacingNames[static_cast<int>(f)]; }

std::optional<Facing> facing_from_name(const std::string& name) {
  const std::string lowered = to_lower(trim(name));
  for (int i = 0; i < 4; ++i) {
    if (lowered == kFacingNames[i]) return static_cast<Facing>(i);
  }
  return std::nullopt;
}

const char* setting_name(Setting s) { return kSettingNames[static_cast<int>(s)]; }

std::optional<Setting> setting_from_name(const std::string& name) {
  const std::string lowered = to_lower(trim(name));
  for (int i = 0; i < 4; ++i) {
    if (lowered == kSettingNames[i]) return static_cast<Setting>(i);
  }
  return std::nullopt;
}

const char* direction_name(Direction d) { return kDirectionNames[static_cast<int>(d)]; }

GridVec facing_vector(Facing f) {
  switch (f) {
    case Facing::up: return {0, -1};
    case Facing::right: return {1, 0};
    case Facing::down: return {0, 1};
    case Facing::left: return {-1, 0};
  }
  return {0, 0};
}

Facing turn(Facing f, int quarter_turns_clockwise) {
  int idx = (static_cast<int>(f) + quarter_turns_clockwise) % 4;
  if (idx < 0) idx += 4;
  return static_cast<Facing>(idx);
}

std::optional<Direction> relative_direction(Facing viewer_facing, GridPos from, GridPos to) {
  if (from == to) {
    throw Error(ErrorKind::degenerate_input, "relative_direction requires distinct positions");
  }
  const int dx = to.x - from.x;
  const int dy = to.y - from.y;
  if (dx != 0 && dy != 0) return std::nullopt;

  const GridVec f = facing_vector(viewer_facing);
  const int sx = (dx > 0) - (dx < 0);
  const int sy = (dy > 0) - (dy < 0);
  if (sx == f.dx && sy == f.dy) return Direction::front;
  if (sx == -f.dx && sy == -f.dy) return Direction::behind;
  // left of a viewer is (f_y, -f_x) under y-down handedness
  if (sx == f.dy && sy == -f.dx) return Direction::left;
  return Direction::right;
}

const MapObject* CognitiveMap::find_object(const std::string& name) const {
  for (const auto& obj : objects) {
    if (names_equal(obj.name, name)) return &obj;
  }
  return nullptr;
}

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  size_t begin = 0;
  size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

bool names_equal(const std::string& a, const std::string& b) {
  return to_lower(trim(a)) == to_lower(trim(b));
}

}  // namespace cogforge
