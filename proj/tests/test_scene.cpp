#include <doctest.h>

#include "cogforge/scene.hpp"

using namespace cogforge;

TEST_CASE("facing vectors pin the y-down convention") {
  CHECK(facing_vector(Facing::up) == GridVec{0, -1});
  CHECK(facing_vector(Facing::down) == GridVec{0, 1});
  CHECK(facing_vector(Facing::left) == GridVec{-1, 0});
  CHECK(facing_vector(Facing::right) == GridVec{1, 0});
}

TEST_CASE("turn cycles clockwise and accepts any integer") {
  CHECK(turn(Facing::up, 1) == Facing::right);
  CHECK(turn(Facing::up, 4) == Facing::up);
  CHECK(turn(Facing::left, 2) == Facing::right);
  CHECK(turn(Facing::down, -1) == Facing::right);
  CHECK(turn(Facing::right, -5) == Facing::up);
}

TEST_CASE("turn is additive over quarter-turn counts") {
  for (int f = 0; f < 4; ++f) {
    for (int a = -5; a <= 5; ++a) {
      for (int b = -5; b <= 5; ++b) {
        const Facing facing = static_cast<Facing>(f);
        CHECK(turn(facing, a + b) == turn(turn(facing, a), b));
      }
    }
  }
}

TEST_CASE("turning left rotates the facing vector with y-down handedness") {
  for (int f = 0; f < 4; ++f) {
    const Facing facing = static_cast<Facing>(f);
    const GridVec v = facing_vector(facing);
    const GridVec left_vec = facing_vector(turn(facing, -1));
    CHECK(left_vec == GridVec{v.dy, -v.dx});
  }
}

TEST_CASE("relative_direction classifies the worked displacements") {
  CHECK(relative_direction(Facing::left, {5, 5}, {5, 8}) == Direction::left);
  CHECK(relative_direction(Facing::up, {5, 5}, {5, 2}) == Direction::front);
  CHECK(relative_direction(Facing::up, {5, 5}, {6, 6}) == std::nullopt);
}

TEST_CASE("relative_direction rejects identical positions") {
  CHECK_THROWS_AS(relative_direction(Facing::up, {3, 3}, {3, 3}), Error);
  try {
    relative_direction(Facing::up, {3, 3}, {3, 3});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate_input);
  }
}

TEST_CASE("every axis-aligned displacement gets exactly one direction") {
  const GridPos from{5, 5};
  for (int f = 0; f < 4; ++f) {
    const Facing facing = static_cast<Facing>(f);
    for (int d = 1; d <= 4; ++d) {
      const GridPos to_cells[4] = {{5 + d, 5}, {5 - d, 5}, {5, 5 + d}, {5, 5 - d}};
      for (const GridPos to : to_cells) {
        const auto dir = relative_direction(facing, from, to);
        REQUIRE(dir.has_value());
        // A half turn swaps front/behind and left/right.
        const auto flipped = relative_direction(turn(facing, 2), from, to);
        REQUIRE(flipped.has_value());
        switch (*dir) {
          case Direction::front: CHECK(*flipped == Direction::behind); break;
          case Direction::behind: CHECK(*flipped == Direction::front); break;
          case Direction::left: CHECK(*flipped == Direction::right); break;
          case Direction::right: CHECK(*flipped == Direction::left); break;
        }
      }
    }
  }
}

TEST_CASE("name helpers round-trip") {
  for (int i = 0; i < 4; ++i) {
    const Facing f = static_cast<Facing>(i);
    CHECK(facing_from_name(facing_name(f)) == f);
    const Setting s = static_cast<Setting>(i);
    CHECK(setting_from_name(setting_name(s)) == s);
  }
  CHECK(facing_from_name("UP ") == Facing::up);
  CHECK_FALSE(facing_from_name("north").has_value());
}
