#include "cogforge/parse.hpp"

#include <cctype>

#include <nlohmann/json.hpp>

namespace cogforge {

using nlohmann::ordered_json;

std::optional<TagSegment> extract_tag(const std::string& text, const std::string& tag) {
  const std::string open = "<" + tag + ">";
  const std::string close = "</" + tag + ">";
  const size_t begin = text.find(open);
  if (begin == std::string::npos) return std::nullopt;
  const size_t content_begin = begin + open.size();
  const size_t end = text.find(close, content_begin);
  if (end == std::string::npos) {
    return TagSegment{text.substr(content_begin), false};
  }
  return TagSegment{text.substr(content_begin, end - content_begin), true};
}

namespace {

void note(std::vector<std::string>* notes, std::string message) {
  if (notes != nullptr) notes->push_back(std::move(message));
}

/// First balanced {...} block, string-aware so braces inside names don't
/// derail the match. nullopt when no complete object exists.
std::optional<std::string> balanced_json_object(const std::string& text) {
  const size_t begin = text.find('{');
  if (begin == std::string::npos) return std::nullopt;
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (size_t i = begin; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return text.substr(begin, i - begin + 1);
    }
  }
  return std::nullopt;
}

bool is_fence_debris(const std::string& line) {
  const std::string t = trim(line);
  if (t.empty()) return true;
  if (t == "```" || t == "```json" || t == "``` json") return true;
  // Quote runs like ''' render as fence residue in captured outputs.
  return t.find_first_not_of("'\"`") == std::string::npos;
}

bool only_debris_lines(const std::string& text) {
  size_t start = 0;
  while (start <= text.size()) {
    const size_t nl = text.find('\n', start);
    const std::string line = text.substr(start, nl == std::string::npos ? nl : nl - start);
    if (!is_fence_debris(line)) return false;
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  return true;
}

std::optional<GridPos> read_position(const ordered_json& value, const std::string& owner,
                                     std::vector<std::string>* notes) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
    note(notes, "position of \"" + owner + "\" is not a 2-element number array; entry dropped");
    return std::nullopt;
  }
  GridPos pos{static_cast<int>(value[0].get<double>()), static_cast<int>(value[1].get<double>())};
  if (!pos.in_bounds()) {
    note(notes, "off_grid: \"" + owner + "\" at [" + std::to_string(pos.x) + ", " +
                    std::to_string(pos.y) + "]");
  }
  return pos;
}

std::optional<Facing> read_facing(const ordered_json& entry, const std::string& owner,
                                  std::vector<std::string>* notes) {
  const auto it = entry.find("facing");
  if (it == entry.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) {
    if (auto f = facing_from_name(it->get<std::string>())) return f;
  }
  note(notes, "unknown facing for \"" + owner + "\"; facing dropped");
  return std::nullopt;
}

CognitiveMap parse_augmented(const ordered_json& doc, std::vector<std::string>* notes) {
  CognitiveMap map;
  if (auto objects = doc.find("objects"); objects != doc.end() && objects->is_array()) {
    for (const auto& entry : *objects) {
      if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string()) {
        note(notes, "object entry without a string name dropped");
        continue;
      }
      const std::string name = entry["name"].get<std::string>();
      if (!entry.contains("position")) {
        note(notes, "object \"" + name + "\" has no position; entry dropped");
        continue;
      }
      if (auto pos = read_position(entry["position"], name, notes)) {
        map.objects.push_back({name, *pos, read_facing(entry, name, notes)});
      }
    }
  }
  if (auto views = doc.find("views"); views != doc.end() && views->is_array()) {
    for (const auto& entry : *views) {
      if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string()) {
        note(notes, "view entry without a string name dropped");
        continue;
      }
      const std::string name = entry["name"].get<std::string>();
      if (!entry.contains("position")) {
        note(notes, "view \"" + name + "\" has no position; entry dropped");
        continue;
      }
      const auto pos = read_position(entry["position"], name, notes);
      if (!pos) continue;
      const auto facing = read_facing(entry, name, notes);
      if (!facing) {
        note(notes, "view \"" + name + "\" has no usable facing; entry dropped");
        continue;
      }
      map.views.push_back({name, *pos, *facing});
    }
  }
  return map;
}

CognitiveMap parse_plain(const ordered_json& doc, std::vector<std::string>* notes) {
  CognitiveMap map;
  for (const auto& [name, value] : doc.items()) {
    if (!value.is_object() || !value.contains("position")) {
      note(notes, "entry \"" + name + "\" has no position object; entry dropped");
      continue;
    }
    if (auto pos = read_position(value["position"], name, notes)) {
      map.objects.push_back({name, *pos, std::nullopt});
    }
  }
  return map;
}

}  // namespace

CognitiveMap parse_cogmap(const std::string& text, std::vector<std::string>* notes) {
  const auto json_text = balanced_json_object(text);
  if (!json_text) {
    if (only_debris_lines(text)) {
      throw Error(ErrorKind::invalid_cogmap, "empty cogmap segment");
    }
    throw Error(ErrorKind::invalid_cogmap, "no balanced JSON object in cogmap segment");
  }

  // Anything outside the braces should only be fences or placeholder text.
  const size_t body = text.find(*json_text);
  if (!only_debris_lines(text.substr(0, body))) {
    note(notes, "leading text before cogmap JSON ignored");
  }
  if (!only_debris_lines(text.substr(body + json_text->size()))) {
    note(notes, "trailing text after cogmap JSON ignored");
  }

  const ordered_json doc = ordered_json::parse(*json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorKind::invalid_cogmap, "cogmap segment is not decodable JSON");
  }

  CognitiveMap map;
  if (doc.contains("objects") || doc.contains("views")) {
    map = parse_augmented(doc, notes);
  } else {
    map = parse_plain(doc, notes);
  }
  if (map.objects.empty() && map.views.empty()) {
    throw Error(ErrorKind::invalid_cogmap, "cogmap JSON carries no usable objects or views");
  }
  return map;
}

namespace {

std::optional<char> scan_answer_segment(const std::string& segment) {
  const std::string s = trim(segment);
  for (size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c < 'A' || c > 'Z') continue;
    const bool left_ok = i == 0 || !std::isalnum(static_cast<unsigned char>(s[i - 1]));
    if (!left_ok) continue;
    if (i + 1 == s.size()) return c;
    const char next = s[i + 1];
    if (next == '.' || next == ')') return c;
  }
  return std::nullopt;
}

std::optional<std::string> last_tag_content(const std::string& text, const std::string& tag) {
  const std::string open = "<" + tag + ">";
  const size_t begin = text.rfind(open);
  if (begin == std::string::npos) return std::nullopt;
  return extract_tag(text.substr(begin), tag)->content;
}

}  // namespace

std::optional<char> parse_answer(const std::string& text) {
  if (auto segment = last_tag_content(text, "answer")) {
    return scan_answer_segment(*segment);
  }
  const size_t window = 200;
  const std::string tail = text.size() > window ? text.substr(text.size() - window) : text;
  return scan_answer_segment(tail);
}

ParsedResponse parse_response(const std::string& text) {
  ParsedResponse parsed;

  if (auto cogmap_tag = extract_tag(text, "cogmap")) {
    if (!cogmap_tag->closed) parsed.notes.push_back("unclosed <cogmap> tag");
    parsed.raw_cogmap_text = cogmap_tag->content;
    try {
      parsed.cogmap = parse_cogmap(cogmap_tag->content, &parsed.notes);
      parsed.cogmap_valid = true;
    } catch (const Error& e) {
      parsed.cogmap_valid = false;
      parsed.notes.push_back(e.what());
    }
  }

  if (auto think_tag = extract_tag(text, "think")) {
    if (!think_tag->closed) parsed.notes.push_back("unclosed <think> tag");
    parsed.think = think_tag->content;
  }

  if (auto answer_tag = extract_tag(text, "answer"); answer_tag && !answer_tag->closed) {
    parsed.notes.push_back("unclosed <answer> tag");
  }
  parsed.answer = parse_answer(text);
  return parsed;
}

}  // namespace cogforge
