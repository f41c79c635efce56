#include "cogforge/goldens.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cogforge {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string fnv1a64_hex(const std::string& data) {
  std::uint64_t hash = 1469598103934665603ull;
  for (const unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::io, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::vector<GoldenCase> load_goldens(const std::string& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorKind::io, "golden fixture directory " + dir + " does not exist");
  }
  std::vector<fs::path> expected_files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().string().ends_with(".expected.json")) {
      expected_files.push_back(entry.path());
    }
  }
  std::sort(expected_files.begin(), expected_files.end());
  if (expected_files.empty()) {
    throw Error(ErrorKind::io, "no golden fixtures under " + dir);
  }

  std::vector<GoldenCase> goldens;
  for (const auto& expected_path : expected_files) {
    const ordered_json meta = ordered_json::parse(read_file(expected_path), nullptr, false);
    if (meta.is_discarded() || !meta.is_object()) {
      throw Error(ErrorKind::fixture_corruption, expected_path.string() + " is not valid JSON");
    }
    GoldenCase golden;
    golden.name = meta.at("name").get<std::string>();

    fs::path raw_path = expected_path;
    raw_path.replace_filename(golden.name + ".txt");
    golden.raw_response_text = read_file(raw_path);

    const std::string checksum = fnv1a64_hex(golden.raw_response_text);
    if (checksum != meta.at("checksum").get<std::string>()) {
      throw Error(ErrorKind::fixture_corruption,
                  raw_path.string() + " does not match its committed checksum (got " + checksum + ")");
    }

    if (const auto& ans = meta.at("answer"); ans.is_string() && !ans.get<std::string>().empty()) {
      golden.expected_answer = ans.get<std::string>()[0];
    }
    golden.expects_cogmap = meta.at("has_cogmap").get<bool>();
    golden.expected_cogmap_valid = meta.at("cogmap_valid").get<bool>();
    golden.expected_objects = meta.value("objects", 0);
    golden.expected_views = meta.value("views", 0);
    golden.gold_answer = meta.at("gold_answer").get<std::string>()[0];
    goldens.push_back(std::move(golden));
  }
  return goldens;
}

}  // namespace cogforge
