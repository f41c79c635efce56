#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "cogforge/cogmap.hpp"
#include "cogforge/parse.hpp"

#include "support.hpp"

using namespace cogforge;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Strip per-line trailing whitespace and any trailing newlines so golden
/// comparisons are byte-exact modulo trailing whitespace.
std::string normalize(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) {
      line.pop_back();
    }
    out += line + "\n";
  }
  while (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

}  // namespace

TEST_CASE("the worked among scene reproduces the published augmented JSON") {
  const CognitiveMap map = testsupport::worked_among_map();
  const std::string expected = read_file(testsupport::fixtures_dir() + "/cogmaps/worked_augmented.json");
  CHECK(normalize(serialize_augmented(map)) == normalize(expected));
}

TEST_CASE("the worked among scene reproduces the published plain JSON") {
  const CognitiveMap map = testsupport::worked_among_map();
  const std::string expected = read_file(testsupport::fixtures_dir() + "/cogmaps/worked_plain.json");
  CHECK(normalize(serialize_plain(map)) == normalize(expected));
}

TEST_CASE("among placement follows the slot order") {
  const CognitiveMap map = testsupport::worked_among_map();
  REQUIRE(map.objects.size() == 5);
  CHECK(map.objects[0].position == GridPos{5, 5});
  CHECK(map.objects[1].position == GridPos{5, 8});
  CHECK(map.objects[2].position == GridPos{2, 5});
  CHECK(map.objects[3].position == GridPos{5, 2});
  CHECK(map.objects[4].position == GridPos{8, 5});
  REQUIRE(map.views.size() == 4);
  CHECK(map.views[0].position == GridPos{5, 6});
  CHECK(map.views[0].facing == Facing::up);
  CHECK(map.views[1].position == GridPos{4, 5});
  CHECK(map.views[1].facing == Facing::right);
  CHECK(map.views[2].position == GridPos{5, 4});
  CHECK(map.views[2].facing == Facing::down);
  CHECK(map.views[3].position == GridPos{6, 5});
  CHECK(map.views[3].facing == Facing::left);
}

TEST_CASE("among geometry holds for every surrounding count and order") {
  const std::vector<std::string> names = {"a", "b", "c", "d"};
  for (int count = 1; count <= 4; ++count) {
    std::vector<int> order(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) order[static_cast<size_t>(i)] = i;
    do {
      SceneItem item;
      item.id = "among_perm";
      item.setting = Setting::among;
      item.objects.push_back({"center", std::nullopt});
      for (const int i : order) item.objects.push_back({names[static_cast<size_t>(i)], std::nullopt});
      for (int v = 0; v < 4; ++v) {
        item.camera.angles.push_back(90 * v);
        item.images.push_back("i.jpg");
      }
      const CognitiveMap map = generate_cogmap(item);
      for (size_t i = 1; i < map.objects.size(); ++i) {
        const int d = std::abs(map.objects[i].position.x - 5) + std::abs(map.objects[i].position.y - 5);
        CHECK(d == 3);
      }
      for (const auto& view : map.views) {
        const int d = std::abs(view.position.x - 5) + std::abs(view.position.y - 5);
        CHECK(d == 1);
        // Facing the center: one step along the facing lands on [5,5].
        CHECK(view.position + facing_vector(view.facing) == GridPos{5, 5});
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST_CASE("among rejects more than four surrounding objects") {
  SceneItem item;
  item.id = "among_overfull";
  item.setting = Setting::among;
  for (const char* name : {"center", "a", "b", "c", "d", "e"}) {
    item.objects.push_back({name, std::nullopt});
  }
  item.camera.angles = {0};
  item.images = {"i.jpg"};
  CHECK_THROWS_AS(generate_cogmap(item), Error);
}

TEST_CASE("around keeps 2-4 objects in a line from [4,5]") {
  SceneItem item;
  item.id = "around_two";
  item.setting = Setting::around;
  item.objects = {{"first", std::nullopt}, {"second", std::nullopt}};
  item.camera.angles = {90, 270};
  item.images = {"a.jpg", "b.jpg"};
  const CognitiveMap map = generate_cogmap(item);
  CHECK(map.objects[0].position == GridPos{4, 5});
  CHECK(map.objects[1].position == GridPos{5, 5});
  // Midpoint rounds half-up to [5,5]; west/east views sit 2 cells out.
  CHECK(map.views[0].position == GridPos{3, 5});
  CHECK(map.views[0].facing == Facing::right);
  CHECK(map.views[1].position == GridPos{7, 5});
  CHECK(map.views[1].facing == Facing::left);

  item.objects.push_back({"third", std::nullopt});
  item.objects.push_back({"fourth", std::nullopt});
  const CognitiveMap map4 = generate_cogmap(item);
  CHECK(map4.objects[3].position == GridPos{7, 5});
  CHECK(map4.views[0].position == GridPos{4, 5});

  item.objects = {{"only", std::nullopt}};
  CHECK_THROWS_AS(generate_cogmap(item), Error);
}

TEST_CASE("rotation pins every view to the center with stepping facings") {
  SceneItem item;
  item.id = "rotation_four";
  item.setting = Setting::rotation;
  item.objects = {{"n", std::nullopt}, {"e", std::nullopt}, {"s", std::nullopt}, {"w", std::nullopt}};
  item.camera.angles = {0, 90, 180, 270};
  item.images = {"1.jpg", "2.jpg", "3.jpg", "4.jpg"};
  const CognitiveMap map = generate_cogmap(item);
  REQUIRE(map.views.size() == 4);
  for (size_t k = 0; k < 4; ++k) {
    CHECK(map.views[k].position == GridPos{5, 5});
    CHECK(map.views[k].facing == turn(Facing::up, static_cast<int>(k)));
  }
  for (size_t k = 1; k < 4; ++k) {
    CHECK(map.views[k].facing == turn(map.views[k - 1].facing, 1));
  }
  // Focal objects sit 3 cells along each facing.
  CHECK(map.objects[0].position == GridPos{5, 2});
  CHECK(map.objects[1].position == GridPos{8, 5});
  CHECK(map.objects[2].position == GridPos{5, 8});
  CHECK(map.objects[3].position == GridPos{2, 5});
}

TEST_CASE("translation chains objects vertically per relation words") {
  SceneItem item;
  item.id = "translation_1";
  item.setting = Setting::translation;
  item.objects = {{"book", std::nullopt}, {"shelf", std::nullopt}, {"rug", std::nullopt}};
  item.camera.relations = {"on", "on"};
  item.images = {"1.jpg"};
  const CognitiveMap map = generate_cogmap(item);
  // "book on shelf": the book is one cell above, so the chain grows downward.
  CHECK(map.objects[0].position == GridPos{5, 5});
  CHECK(map.objects[1].position == GridPos{5, 6});
  CHECK(map.objects[2].position == GridPos{5, 7});
  REQUIRE(map.views.size() == 1);
  CHECK(map.views[0].position == GridPos{3, 5});
  CHECK(map.views[0].facing == Facing::right);

  item.camera.relations = {"on", "hovering near"};
  CHECK_THROWS_AS(generate_cogmap(item), Error);
  try {
    generate_cogmap(item);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unsupported_relation);
  }
}

TEST_CASE("meta orientations become object facings") {
  SceneItem item;
  item.id = "among_oriented";
  item.setting = Setting::among;
  item.objects = {{"center", Facing::down}, {"side", std::nullopt}};
  item.camera.angles = {0};
  item.images = {"1.jpg"};
  const CognitiveMap map = generate_cogmap(item);
  CHECK(map.objects[0].facing == Facing::down);
  CHECK_FALSE(map.objects[1].facing.has_value());
  const std::string text = serialize_augmented(map);
  CHECK(text.find(R"({"name": "center", "position": [5, 5], "facing": "down"})") != std::string::npos);
}

TEST_CASE("generation is deterministic") {
  const SceneItem item = testsupport::worked_among_item();
  CHECK(generate_cogmap(item) == generate_cogmap(item));
  CHECK(serialize_augmented(generate_cogmap(item)) == serialize_augmented(generate_cogmap(item)));
}

TEST_CASE("empty map serializes to the empty skeletons") {
  const CognitiveMap empty;
  CHECK(serialize_augmented(empty) == "{\n  \"objects\": [],\n  \"views\": []\n}");
  CHECK(serialize_plain(empty) == "{}");
}

TEST_CASE("plain schema rejects duplicate names") {
  CognitiveMap map;
  map.objects.push_back({"chair", {1, 1}, std::nullopt});
  map.objects.push_back({"chair", {2, 2}, std::nullopt});
  CHECK_THROWS_AS(serialize_plain(map), Error);
}

TEST_CASE("single object plain serialization") {
  CognitiveMap map;
  map.objects.push_back({"a", {0, 0}, std::nullopt});
  CHECK(serialize_plain(map) == "{\n    \"a\": {\"position\": [0, 0]}\n}");
}

TEST_CASE("serialized maps round-trip through the parser") {
  std::mt19937 rng(20240811);
  for (int i = 0; i < 1000; ++i) {
    const CognitiveMap map = testsupport::random_map(rng);
    CHECK(parse_cogmap(serialize_augmented(map)) == map);

    // Plain keeps only the name -> position mapping, and needs unique names
    // (random_map already guarantees that).
    const CognitiveMap plain = parse_cogmap(serialize_plain(map));
    REQUIRE(plain.objects.size() == map.objects.size());
    for (size_t k = 0; k < map.objects.size(); ++k) {
      CHECK(plain.objects[k].name == map.objects[k].name);
      CHECK(plain.objects[k].position == map.objects[k].position);
    }
  }
}
