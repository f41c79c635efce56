#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cogforge/parse.hpp"

namespace cogforge {

/// One committed raw response plus the expected parse outcome. The raw text
/// is checksummed so silent fixture edits are caught at load time.
struct GoldenCase {
  std::string name;
  std::string raw_response_text;
  std::optional<char> expected_answer;
  bool expects_cogmap = false;
  bool expected_cogmap_valid = false;
  int expected_objects = 0;
  int expected_views = 0;
  char gold_answer = 0;
};

/// 64-bit FNV-1a, rendered as 16 hex digits; the fixture checksum format.
std::string fnv1a64_hex(const std::string& data);

/// Load every golden under dir: each <name>.txt pairs with
/// <name>.expected.json carrying the expectations and the checksum of the
/// raw text. A checksum mismatch is a fixture-corruption error.
std::vector<GoldenCase> load_goldens(const std::string& dir);

}  // namespace cogforge
