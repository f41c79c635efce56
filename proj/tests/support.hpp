#pragma once

#include <random>
#include <string>
#include <vector>

#include "cogforge/cogmap.hpp"
#include "cogforge/oracle.hpp"
#include "cogforge/scene.hpp"

namespace testsupport {

inline std::string repo_dir() { return COGFORGE_REPO_DIR; }
inline std::string fixtures_dir() { return repo_dir() + "/fixtures"; }
inline std::string templates_dir() { return repo_dir() + "/templates"; }

/// The worked among scene: white jar at the center, four surrounding
/// objects, four views orbiting clockwise.
inline cogforge::SceneItem worked_among_item() {
  cogforge::SceneItem item;
  item.id = "among_worked_0001";
  item.setting = cogforge::Setting::among;
  item.images = {"images/among/0001/1.jpg", "images/among/0001/2.jpg", "images/among/0001/3.jpg",
                 "images/among/0001/4.jpg"};
  item.objects = {{"white jar", std::nullopt},
                  {"bed sheet with a floral pattern", std::nullopt},
                  {"white headboard", std::nullopt},
                  {"clothes rack", std::nullopt},
                  {"table with cups on it", std::nullopt}};
  item.camera.angles = {0, 90, 180, 270};
  item.question = "From the perspective of image 4, what is on the left side of the white jar?";
  item.options = {{'A', "Table with cups on it"},
                  {'B', "Clothes rack"},
                  {'C', "Bed sheet with a floral pattern"},
                  {'D', "White headboard"}};
  item.gold_answer = 'C';
  return item;
}

inline cogforge::CognitiveMap worked_among_map() {
  return cogforge::generate_cogmap(worked_among_item());
}

/// Independent answer computation for the brute-force comparisons: scan every
/// object directly from coordinates, no shared code with resolve_question's
/// ray/opposite-view machinery beyond the scene primitives.
inline std::optional<std::string> brute_force_relative(const cogforge::CognitiveMap& map,
                                                       int view_index, const std::string& anchor,
                                                       cogforge::Direction dir, bool* ambiguous) {
  using namespace cogforge;
  *ambiguous = false;
  const MapView& view = map.views[static_cast<size_t>(view_index) - 1];
  const MapObject* anchor_obj = map.find_object(anchor);
  if (anchor_obj == nullptr) return std::nullopt;

  std::optional<std::string> best;
  int best_distance = 1 << 20;
  for (const auto& obj : map.objects) {
    if (names_equal(obj.name, anchor)) continue;
    if (obj.position == anchor_obj->position) continue;
    const int dx = obj.position.x - anchor_obj->position.x;
    const int dy = obj.position.y - anchor_obj->position.y;
    if (dx != 0 && dy != 0) continue;
    const GridVec f = facing_vector(view.facing);
    const int sx = (dx > 0) - (dx < 0);
    const int sy = (dy > 0) - (dy < 0);
    Direction got;
    if (sx == f.dx && sy == f.dy) {
      got = Direction::front;
    } else if (sx == -f.dx && sy == -f.dy) {
      got = Direction::behind;
    } else if (sx == f.dy && sy == -f.dx) {
      got = Direction::left;
    } else {
      got = Direction::right;
    }
    if (got != dir) continue;
    const int distance = std::abs(dx) + std::abs(dy);
    if (distance < best_distance) {
      best = obj.name;
      best_distance = distance;
      *ambiguous = false;
    } else if (distance == best_distance) {
      *ambiguous = true;
    }
  }
  return best;
}

inline std::optional<std::string> brute_force_behind_viewer(const cogforge::CognitiveMap& map,
                                                            int view_index, bool* ambiguous) {
  using namespace cogforge;
  *ambiguous = false;
  const MapView& view = map.views[static_cast<size_t>(view_index) - 1];
  const GridVec f = facing_vector(view.facing);
  std::optional<std::string> best;
  int best_distance = 1 << 20;
  for (const auto& obj : map.objects) {
    const int dx = obj.position.x - view.position.x;
    const int dy = obj.position.y - view.position.y;
    if ((dx != 0 && dy != 0) || (dx == 0 && dy == 0)) continue;
    const int along = dx * f.dx + dy * f.dy;
    const int across = dx * f.dy - dy * f.dx;
    if (across != 0 || along >= 0) continue;
    const int distance = -along;
    if (distance < best_distance) {
      best = obj.name;
      best_distance = distance;
      *ambiguous = false;
    } else if (distance == best_distance) {
      *ambiguous = true;
    }
  }
  return best;
}

/// Randomized valid map for round-trip and symmetry properties.
inline cogforge::CognitiveMap random_map(std::mt19937& rng) {
  using namespace cogforge;
  CognitiveMap map;
  std::uniform_int_distribution<int> cell(0, kGridSize - 1);
  std::uniform_int_distribution<int> object_count(1, 6);
  std::uniform_int_distribution<int> view_count(0, 4);
  std::uniform_int_distribution<int> facing_pick(0, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> name_len(1, 24);
  // Printable ASCII incl. quotes and backslash to stress JSON escaping.
  std::uniform_int_distribution<int> ch(32, 126);

  const int objects = object_count(rng);
  for (int i = 0; i < objects; ++i) {
    std::string name;
    do {
      name.clear();
      const int len = name_len(rng);
      for (int c = 0; c < len; ++c) name.push_back(static_cast<char>(ch(rng)));
      name = trim(name);
    } while (name.empty() || map.find_object(name) != nullptr);
    std::optional<Facing> facing;
    if (coin(rng) != 0) facing = static_cast<Facing>(facing_pick(rng));
    map.objects.push_back({name, GridPos{cell(rng), cell(rng)}, facing});
  }
  const int views = view_count(rng);
  for (int i = 0; i < views; ++i) {
    map.views.push_back({"Image " + std::to_string(i + 1), GridPos{cell(rng), cell(rng)},
                         static_cast<Facing>(facing_pick(rng))});
  }
  return map;
}

/// Random among-layout scene for oracle symmetry checks: center plus 1-4
/// surrounding objects in the cardinal slots, views per camera angle.
inline cogforge::SceneItem random_among_item(std::mt19937& rng, int surrounding) {
  using namespace cogforge;
  SceneItem item;
  item.id = "among_rand";
  item.setting = Setting::among;
  item.objects.push_back({"center piece", std::nullopt});
  const std::vector<std::string> names = {"red chair", "blue lamp", "green sofa", "oak shelf"};
  for (int i = 0; i < surrounding; ++i) item.objects.push_back({names[static_cast<size_t>(i)], std::nullopt});
  std::uniform_int_distribution<int> view_count(1, 4);
  const int views = view_count(rng);
  for (int i = 0; i < views; ++i) item.camera.angles.push_back(90 * i);
  for (int i = 0; i < views; ++i) item.images.push_back("img" + std::to_string(i) + ".jpg");
  item.question = "placeholder";
  item.options = {{'A', "red chair"}, {'B', "blue lamp"}};
  item.gold_answer = 'A';
  return item;
}

}  // namespace testsupport
