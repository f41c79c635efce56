#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "cogforge/error.hpp"

namespace cogforge {

inline constexpr int kGridSize = 10;

/// Cell on the 10x10 layout grid. The origin is the top-left corner and y
/// grows downward, so "up" moves toward smaller y. Serialized as [x, y].
struct GridPos {
  int x = 0;
  int y = 0;

  bool in_bounds() const { return x >= 0 && x < kGridSize && y >= 0 && y < kGridSize; }
  auto operator<=>(const GridPos&) const = default;
};

struct GridVec {
  int dx = 0;
  int dy = 0;
  auto operator<=>(const GridVec&) const = default;
};

inline GridPos operator+(GridPos p, GridVec v) { return {p.x + v.dx, p.y + v.dy}; }
inline GridVec operator*(int s, GridVec v) { return {s * v.dx, s * v.dy}; }

/// Camera or object heading. Enumerator order is the clockwise cycle so that
/// turning is modular arithmetic.
enum class Facing { up, right, down, left };

/// Scene arrangement family, encoded in the item id.
enum class Setting { around, among, translation, rotation };

/// Direction of a displacement as seen by a viewer with a given facing.
/// front means "further along the facing", i.e. the object a viewer reports
/// as sitting behind whatever it is looking at.
enum class Direction { front, behind, left, right };

const char* facing_name(Facing f);
std::optional<Facing> facing_from_name(const std::string& name);

const char* setting_name(Setting s);
std::optional<Setting> setting_from_name(const std::string& name);

const char* direction_name(Direction d);

/// up -> (0,-1), down -> (0,+1), left -> (-1,0), right -> (+1,0).
GridVec facing_vector(Facing f);

/// Rotate a facing by quarter turns; positive turns are clockwise on the
/// y-down grid (up -> right -> down -> left). Any integer is accepted.
Facing turn(Facing f, int quarter_turns_clockwise);

/// Classify the displacement from -> to in the frame of a viewer facing f.
/// Only axis-aligned displacements classify; off-axis returns nullopt.
/// Identical positions are a degenerate-input error.
std::optional<Direction> relative_direction(Facing viewer_facing, GridPos from, GridPos to);

struct ObjectSpec {
  std::string name;
  std::optional<Facing> orientation;
  auto operator<=>(const ObjectSpec&) const = default;
};

/// Ordered camera description from meta_info: angles (degrees, multiples of
/// 90) for among/around/rotation items, relation words for translation items.
struct CameraSetup {
  std::vector<int> angles;
  std::vector<std::string> relations;
  auto operator<=>(const CameraSetup&) const = default;
};

struct SceneOption {
  char letter = 'A';
  std::string text;
  auto operator<=>(const SceneOption&) const = default;
};

/// One annotated scene from the input JSONL. Option letters are positional
/// (A, B, ...); extra input fields are preserved on the raw line kept by the
/// loader.
struct SceneItem {
  std::string id;
  std::vector<std::string> images;
  std::vector<ObjectSpec> objects;
  CameraSetup camera;
  std::string question;
  std::vector<SceneOption> options;
  char gold_answer = 0;
  Setting setting = Setting::among;
};

struct MapObject {
  std::string name;
  GridPos position;
  std::optional<Facing> facing;
  auto operator<=>(const MapObject&) const = default;
};

struct MapView {
  std::string name;  // "Image k"
  GridPos position;
  Facing facing = Facing::up;
  auto operator<=>(const MapView&) const = default;
};

/// Schematic layout of a scene: objects plus camera views on the grid.
/// Generated maps keep names unique and views numbered "Image 1..n"; maps
/// recovered from model output may violate both (see parse_cogmap).
struct CognitiveMap {
  std::vector<MapObject> objects;
  std::vector<MapView> views;

  const MapObject* find_object(const std::string& name) const;  // case-insensitive
  auto operator<=>(const CognitiveMap&) const = default;
};

/// Case-insensitive comparison after trimming surrounding whitespace; the
/// matching rule used everywhere names or option texts are compared.
bool names_equal(const std::string& a, const std::string& b);

std::string to_lower(std::string s);
std::string trim(const std::string& s);

}  // namespace cogforge
