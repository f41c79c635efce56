#include "cogforge/ingest.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace cogforge {

using nlohmann::ordered_json;

Setting parse_setting(const std::string& item_id) {
  if (trim(item_id).empty()) {
    throw Error(ErrorKind::unparseable_setting, "empty item id");
  }
  std::set<Setting> found;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (auto s = setting_from_name(token)) found.insert(*s);
    token.clear();
  };
  for (char c : item_id) {
    if (c == '_' || c == '-' || c == '/') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  if (found.empty()) {
    throw Error(ErrorKind::unparseable_setting, "no setting token in id \"" + item_id + "\"");
  }
  if (found.size() > 1) {
    throw Error(ErrorKind::unparseable_setting,
                "multiple distinct setting tokens in id \"" + item_id + "\"");
  }
  return *found.begin();
}

namespace {

const ordered_json& require_field(const ordered_json& record, const char* key) {
  auto it = record.find(key);
  if (it == record.end()) {
    throw Error(ErrorKind::schema, std::string("missing field ") + key);
  }
  return *it;
}

std::optional<Facing> parse_orientation(const ordered_json& value, const std::string& object_name) {
  if (value.is_null()) return std::nullopt;
  if (!value.is_string()) {
    throw Error(ErrorKind::schema, "orientation of \"" + object_name + "\" must be a string");
  }
  auto facing = facing_from_name(value.get<std::string>());
  if (!facing) {
    throw Error(ErrorKind::schema,
                "unknown orientation \"" + value.get<std::string>() + "\" for \"" + object_name + "\"");
  }
  return facing;
}

}  // namespace

SceneItem validate_item(const ordered_json& record) {
  if (!record.is_object()) {
    throw Error(ErrorKind::schema, "line is not a JSON object");
  }
  SceneItem item;

  const auto& id = require_field(record, "id");
  if (!id.is_string()) throw Error(ErrorKind::schema, "field id must be a string");
  item.id = id.get<std::string>();
  item.setting = parse_setting(item.id);

  const auto& images = require_field(record, "images");
  if (!images.is_array() || images.empty()) {
    throw Error(ErrorKind::schema, "field images must be a nonempty array");
  }
  for (const auto& img : images) {
    if (!img.is_string()) throw Error(ErrorKind::schema, "images entries must be strings");
    item.images.push_back(img.get<std::string>());
  }

  const auto& meta = require_field(record, "meta_info");
  if (!meta.is_object()) throw Error(ErrorKind::schema, "field meta_info must be an object");
  const auto& objects = require_field(meta, "objects");
  if (!objects.is_array() || objects.empty()) {
    throw Error(ErrorKind::schema, "meta_info.objects must be a nonempty array");
  }
  for (const auto& obj : objects) {
    ObjectSpec spec;
    if (obj.is_string()) {
      spec.name = obj.get<std::string>();
    } else if (obj.is_object()) {
      const auto& name = require_field(obj, "name");
      if (!name.is_string()) throw Error(ErrorKind::schema, "object name must be a string");
      spec.name = name.get<std::string>();
      if (auto it = obj.find("orientation"); it != obj.end()) {
        spec.orientation = parse_orientation(*it, spec.name);
      }
    } else {
      throw Error(ErrorKind::schema, "meta_info.objects entries must be strings or objects");
    }
    if (trim(spec.name).empty()) throw Error(ErrorKind::schema, "object name must be nonempty");
    item.objects.push_back(std::move(spec));
  }
  if (auto cam = meta.find("camera"); cam != meta.end()) {
    if (!cam->is_object()) throw Error(ErrorKind::schema, "meta_info.camera must be an object");
    if (auto angles = cam->find("angles"); angles != cam->end()) {
      if (!angles->is_array()) throw Error(ErrorKind::schema, "camera.angles must be an array");
      for (const auto& a : *angles) {
        if (!a.is_number_integer()) {
          throw Error(ErrorKind::schema, "camera.angles entries must be integers");
        }
        item.camera.angles.push_back(a.get<int>());
      }
    }
  }
  if (auto rel = meta.find("relations"); rel != meta.end()) {
    if (!rel->is_array()) throw Error(ErrorKind::schema, "meta_info.relations must be an array");
    for (const auto& r : *rel) {
      if (!r.is_string()) throw Error(ErrorKind::schema, "relations entries must be strings");
      item.camera.relations.push_back(r.get<std::string>());
    }
  }

  const auto& question = require_field(record, "question");
  if (!question.is_string()) throw Error(ErrorKind::schema, "field question must be a string");
  item.question = question.get<std::string>();

  const auto& options = require_field(record, "options");
  if (!options.is_array() || options.size() < 2) {
    throw Error(ErrorKind::schema, "field options must list at least 2 entries");
  }
  if (options.size() > 26) {
    throw Error(ErrorKind::schema, "field options supports at most 26 entries");
  }
  char letter = 'A';
  for (const auto& opt : options) {
    if (!opt.is_string()) throw Error(ErrorKind::schema, "options entries must be strings");
    item.options.push_back(SceneOption{letter, opt.get<std::string>()});
    ++letter;
  }

  auto answer_it = record.find("gt_answer");
  if (answer_it == record.end()) answer_it = record.find("answer");
  if (answer_it == record.end()) {
    throw Error(ErrorKind::schema, "missing field gt_answer");
  }
  if (!answer_it->is_string()) throw Error(ErrorKind::schema, "field gt_answer must be a string");
  const std::string gold = trim(answer_it->get<std::string>());
  if (gold.size() != 1) {
    throw Error(ErrorKind::schema, "gt_answer must be a single option letter");
  }
  const char gold_letter = static_cast<char>(std::toupper(static_cast<unsigned char>(gold[0])));
  const bool known = gold_letter >= 'A' && gold_letter < letter;
  if (!known) {
    throw Error(ErrorKind::schema, std::string("gt_answer letter ") + gold_letter +
                                       " is not among the options");
  }
  item.gold_answer = gold_letter;

  return item;
}

DatasetFile load_items(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::io, "cannot open " + path);
  }
  DatasetFile dataset;
  dataset.path = path;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ordered_json record = ordered_json::parse(line, nullptr, false);
    if (record.is_discarded()) {
      dataset.line_errors.push_back({line_no, "invalid JSON"});
      continue;
    }
    try {
      dataset.items.push_back(validate_item(record));
      dataset.raw_items.push_back(std::move(record));
    } catch (const Error& e) {
      dataset.line_errors.push_back({line_no, e.what()});
    }
  }
  return dataset;
}

const DatasetFile& require_items(const DatasetFile& dataset) {
  if (dataset.items.empty()) {
    std::ostringstream msg;
    msg << dataset.path << " produced no valid items";
    if (!dataset.line_errors.empty()) {
      msg << " (" << dataset.line_errors.size() << " line errors, first at line "
          << dataset.line_errors.front().line << ": " << dataset.line_errors.front().message << ")";
    }
    throw Error(ErrorKind::empty_dataset, msg.str());
  }
  return dataset;
}

}  // namespace cogforge
