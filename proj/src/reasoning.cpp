#include "cogforge/reasoning.hpp"

#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include "cogforge/oracle.hpp"

namespace cogforge {

namespace {

// Allowed slots per section. Sections absent from a setting's table are
// rejected at load time so template edits fail fast.
using SlotTable = std::map<std::string, std::set<std::string>>;

const SlotTable& slot_table(Setting setting) {
  static const SlotTable among_around = {
      {"header", {"image_count", "anchor"}},
      {"observation", {"k", "anchor", "object"}},
      {"rotation_intro", {}},
      {"rotation_step_quarter", {"k"}},
      {"rotation_step_half", {"k", "degrees"}},
      {"rotation_step_three_quarter", {"k", "degrees"}},
      {"rotation_step_same", {"k"}},
      {"inference_intro", {}},
      {"inference_first", {"object", "anchor", "view_ordinal", "base_ordinal", "side"}},
      {"inference_next", {"object", "anchor", "view_ordinal", "base_ordinal", "side"}},
      {"opposite_intro", {"base_ordinal", "opposite_ordinal"}},
      {"opposite_binding", {"object", "anchor", "opposite_ordinal", "base_ordinal"}},
      {"integration", {}},
      {"restatement_intro", {"question_view"}},
      {"restatement_right", {"object", "anchor"}},
      {"restatement_behind", {"object"}},
      {"restatement_left", {"object", "anchor"}},
      {"answer", {"letter", "option"}},
  };
  static const SlotTable rotation = {
      {"header", {"image_count"}},
      {"observation", {"k", "object"}},
      {"rotation_intro", {}},
      {"rotation_step_quarter", {"k"}},
      {"rotation_step_half", {"k", "degrees"}},
      {"rotation_step_three_quarter", {"k", "degrees"}},
      {"rotation_step_same", {"k"}},
      {"inference_intro", {}},
      {"inference_first", {"object", "view_ordinal", "base_ordinal", "side"}},
      {"inference_next", {"object", "view_ordinal", "base_ordinal", "side"}},
      {"opposite_intro", {"base_ordinal", "opposite_ordinal"}},
      {"opposite_binding", {"object", "opposite_ordinal", "base_ordinal"}},
      {"integration", {}},
      {"restatement_intro", {"question_view"}},
      {"restatement_right", {"object"}},
      {"restatement_behind", {"object"}},
      {"restatement_left", {"object"}},
      {"answer", {"letter", "option"}},
  };
  return setting == Setting::rotation ? rotation : among_around;
}

std::vector<std::string> find_slots(const std::string& text) {
  std::vector<std::string> slots;
  size_t pos = 0;
  while ((pos = text.find('{', pos)) != std::string::npos) {
    const size_t end = text.find('}', pos);
    if (end == std::string::npos) break;
    slots.push_back(text.substr(pos + 1, end - pos - 1));
    pos = end + 1;
  }
  return slots;
}

const std::array<const char*, 10> kOrdinalWords = {"first", "second", "third",   "fourth", "fifth",
                                                   "sixth", "seventh", "eighth", "ninth",  "tenth"};
const std::array<const char*, 10> kCountWords = {"one", "two",   "three", "four", "five",
                                                 "six", "seven", "eight", "nine", "ten"};

std::string ordinal(int k) {
  if (k >= 1 && k <= 10) return kOrdinalWords[static_cast<size_t>(k - 1)];
  return std::to_string(k) + "th";
}

std::string count_word(size_t n) {
  if (n >= 1 && n <= 10) return kCountWords[n - 1];
  return std::to_string(n);
}

int facing_steps_from(Facing base, Facing f) {
  return (static_cast<int>(f) - static_cast<int>(base) + 4) % 4;
}

}  // namespace

ReasoningTemplates ReasoningTemplates::load(const std::string& path, Setting setting) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::io, "cannot open template file " + path);
  }
  ReasoningTemplates templates;
  templates.setting_ = setting;

  const SlotTable& allowed = slot_table(setting);
  std::string line;
  std::string current;
  std::string buffer;
  auto flush = [&] {
    if (current.empty()) return;
    templates.sections_[current] = trim(buffer);
    buffer.clear();
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '@') {
      flush();
      current = trim(line.substr(1));
      if (allowed.find(current) == allowed.end()) {
        throw Error(ErrorKind::template_error, path + ": unknown section @" + current);
      }
      continue;
    }
    if (current.empty()) {
      if (trim(line).empty() || line[0] == '#') continue;
      throw Error(ErrorKind::template_error, path + ": text before the first @section");
    }
    buffer += line + "\n";
  }
  flush();

  for (const auto& [name, slots] : allowed) {
    const auto it = templates.sections_.find(name);
    if (it == templates.sections_.end()) {
      throw Error(ErrorKind::template_error, path + ": missing section @" + name);
    }
    for (const auto& slot : find_slots(it->second)) {
      if (slots.find(slot) == slots.end()) {
        throw Error(ErrorKind::template_error,
                    path + ": section @" + name + " uses unknown slot {" + slot + "}");
      }
    }
  }
  return templates;
}

const std::string& ReasoningTemplates::section(const std::string& name) const {
  const auto it = sections_.find(name);
  if (it == sections_.end()) {
    throw Error(ErrorKind::template_error, "no template section @" + name);
  }
  return it->second;
}

bool ReasoningTemplates::has_section(const std::string& name) const {
  return sections_.find(name) != sections_.end();
}

std::string ReasoningTemplates::fill(const std::string& section_name,
                                     const std::map<std::string, std::string>& slots) const {
  const std::string& text = section(section_name);
  std::string out;
  out.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t open = text.find('{', pos);
    if (open == std::string::npos) {
      out.append(text, pos, std::string::npos);
      break;
    }
    out.append(text, pos, open - pos);
    const size_t close = text.find('}', open);
    const std::string slot = text.substr(open + 1, close - open - 1);
    const auto it = slots.find(slot);
    if (it == slots.end()) {
      throw Error(ErrorKind::template_error,
                  "section @" + section_name + " needs slot {" + slot + "} which was not bound");
    }
    out += it->second;
    pos = close + 1;
  }
  return out;
}

TemplateLibrary TemplateLibrary::load(const std::string& template_dir) {
  auto path = [&](Setting s) { return template_dir + "/reasoning_" + setting_name(s) + ".txt"; };
  return TemplateLibrary{
      ReasoningTemplates::load(path(Setting::among), Setting::among),
      ReasoningTemplates::load(path(Setting::around), Setting::around),
      ReasoningTemplates::load(path(Setting::rotation), Setting::rotation),
  };
}

const ReasoningTemplates& TemplateLibrary::for_setting(Setting setting) const {
  switch (setting) {
    case Setting::among: return among;
    case Setting::around: return around;
    case Setting::rotation: return rotation;
    case Setting::translation: break;
  }
  throw Error(ErrorKind::template_error, "no reasoning template for the translation setting");
}

namespace {

struct ChainContext {
  const SceneItem& item;
  const CognitiveMap& map;
  const ReasoningTemplates& templates;
  bool is_rotation;
  Question question;
  std::string common_anchor;  // empty for rotation
  std::vector<std::string> sentences;
};

std::string require_view_object(const ChainContext& ctx, int view_index, bool beyond) {
  const auto name =
      beyond ? front_object(ctx.map, view_index) : looked_at_object(ctx.map, view_index);
  if (!name) {
    throw Error(ErrorKind::ungroundable_chain,
                "item " + ctx.item.id + ": view " + std::to_string(view_index) +
                    (beyond ? " has no object beyond its anchor" : " sees no object"));
  }
  return *name;
}

/// The view's subject for sentences that pair "<anchor> in front of the
/// <object>": the first object on its ray.
std::string view_anchor(const ChainContext& ctx, int view_index) {
  return require_view_object(ctx, view_index, /*beyond=*/false);
}

std::string find_common_anchor(const SceneItem& item, const CognitiveMap& map) {
  for (const auto& obj : map.objects) {
    bool on_all = true;
    for (size_t v = 1; v <= map.views.size(); ++v) {
      bool found = false;
      // The object must lie on this view's forward ray.
      const auto& view = map.views[v - 1];
      const GridVec dir = facing_vector(view.facing);
      const int dx = obj.position.x - view.position.x;
      const int dy = obj.position.y - view.position.y;
      found = (dx * dir.dy - dy * dir.dx == 0) && (dx * dir.dx + dy * dir.dy > 0);
      if (!found) {
        on_all = false;
        break;
      }
    }
    if (on_all) return obj.name;
  }
  throw Error(ErrorKind::ungroundable_chain,
              "item " + item.id + ": no object is visible in every view");
}

void emit_observations(ChainContext& ctx) {
  for (size_t k = 1; k <= ctx.map.views.size(); ++k) {
    const int view = static_cast<int>(k);
    std::map<std::string, std::string> slots = {{"k", std::to_string(view)}};
    if (ctx.is_rotation) {
      slots["object"] = require_view_object(ctx, view, /*beyond=*/false);
    } else {
      slots["anchor"] = view_anchor(ctx, view);
      slots["object"] = require_view_object(ctx, view, /*beyond=*/true);
    }
    ctx.sentences.push_back(ctx.templates.fill("observation", slots));
  }
}

void emit_rotation_identification(ChainContext& ctx) {
  if (ctx.map.views.size() < 2) return;
  ctx.sentences.push_back(ctx.templates.fill("rotation_intro", {}));
  const Facing base = ctx.map.views[0].facing;
  for (size_t k = 2; k <= ctx.map.views.size(); ++k) {
    const int steps = facing_steps_from(base, ctx.map.views[k - 1].facing);
    std::map<std::string, std::string> slots = {{"k", std::to_string(k)},
                                                {"degrees", std::to_string(steps * 90)}};
    const char* section = "rotation_step_same";
    if (steps == 1) section = "rotation_step_quarter";
    if (steps == 2) section = "rotation_step_half";
    if (steps == 3) section = "rotation_step_three_quarter";
    ctx.sentences.push_back(ctx.templates.fill(section, slots));
  }
}

void emit_inferences(ChainContext& ctx) {
  const Facing base = ctx.map.views[0].facing;
  bool first = true;
  std::vector<std::string> clauses;
  for (size_t k = 2; k <= ctx.map.views.size(); ++k) {
    const int steps = facing_steps_from(base, ctx.map.views[k - 1].facing);
    if (steps != 1 && steps != 3) continue;
    const int view = static_cast<int>(k);
    std::map<std::string, std::string> slots = {
        {"view_ordinal", ordinal(view)},
        {"base_ordinal", ordinal(1)},
        {"side", steps == 1 ? "right" : "left"},
    };
    if (ctx.is_rotation) {
      slots["object"] = require_view_object(ctx, view, /*beyond=*/false);
    } else {
      slots["anchor"] = view_anchor(ctx, view);
      slots["object"] = require_view_object(ctx, view, /*beyond=*/true);
    }
    clauses.push_back(ctx.templates.fill(first ? "inference_first" : "inference_next", slots));
    first = false;
  }
  if (clauses.empty()) return;
  std::string text = ctx.templates.fill("inference_intro", {});
  for (const auto& clause : clauses) text += " " + clause;
  ctx.sentences.push_back(text);
}

/// The opposite-view block resolves the object behind the first view's
/// camera; it is emitted exactly when the queried object sits there.
void emit_opposite_block(ChainContext& ctx, const std::optional<std::string>& answer_object) {
  if (!answer_object) return;
  const MapObject* target = ctx.map.find_object(*answer_object);
  if (target == nullptr) return;
  const auto& first_view = ctx.map.views[0];
  if (target->position == first_view.position) return;
  const auto rel =
      relative_direction(first_view.facing, first_view.position, target->position);
  if (rel != Direction::behind) return;
  const auto opposite = opposite_view(ctx.map, 1);
  if (!opposite) return;

  std::map<std::string, std::string> slots = {{"base_ordinal", ordinal(1)},
                                              {"opposite_ordinal", ordinal(*opposite)}};
  std::map<std::string, std::string> binding = slots;
  if (ctx.is_rotation) {
    const auto rear = looked_at_object(ctx.map, *opposite);
    if (!rear) return;
    binding["object"] = *rear;
  } else {
    const auto rear = front_object(ctx.map, *opposite);
    if (!rear) return;
    binding["object"] = *rear;
    binding["anchor"] = view_anchor(ctx, *opposite);
  }
  ctx.sentences.push_back(ctx.templates.fill("opposite_intro", slots));
  ctx.sentences.push_back(ctx.templates.fill("opposite_binding", binding));
  ctx.sentences.push_back(ctx.templates.fill("integration", {}));
}

void emit_restatement(ChainContext& ctx) {
  const int qv = ctx.question.view_index;
  const auto& view = ctx.map.views[static_cast<size_t>(qv) - 1];
  const std::string anchor_name =
      !ctx.question.anchor.empty() ? ctx.question.anchor : ctx.common_anchor;
  const MapObject* anchor = ctx.map.find_object(anchor_name);

  std::vector<std::string> clauses;
  auto add_clause = [&](Direction dir, const char* section) {
    std::optional<std::string> name;
    if (dir == Direction::behind) {
      name = object_in_direction(ctx.map, view.facing, view.position, Direction::behind);
    } else if (ctx.is_rotation || anchor == nullptr) {
      name = object_in_direction(ctx.map, view.facing, view.position, dir);
    } else {
      name = object_in_direction(ctx.map, view.facing, anchor->position, dir, anchor->name);
    }
    if (!name) return;
    std::map<std::string, std::string> slots = {{"object", *name}};
    if (!ctx.is_rotation) slots["anchor"] = anchor_name;
    clauses.push_back(ctx.templates.fill(section, slots));
  };
  add_clause(Direction::right, "restatement_right");
  add_clause(Direction::behind, "restatement_behind");
  add_clause(Direction::left, "restatement_left");
  if (clauses.empty()) return;

  std::string text =
      ctx.templates.fill("restatement_intro", {{"question_view", std::to_string(qv)}});
  text += " " + clauses[0];
  for (size_t i = 1; i < clauses.size(); ++i) text += ", " + clauses[i];
  text += ".";
  ctx.sentences.push_back(text);
}

}  // namespace

ReasoningChain generate_reasoning(const SceneItem& item, const CognitiveMap& map,
                                  const TemplateLibrary& templates) {
  if (item.setting == Setting::translation) {
    throw Error(ErrorKind::template_error,
                "item " + item.id + ": translation items carry no reasoning chain");
  }
  if (map.views.empty()) {
    throw Error(ErrorKind::ungroundable_chain, "item " + item.id + ": map has no views");
  }

  ChainContext ctx{item, map, templates.for_setting(item.setting),
                   item.setting == Setting::rotation,
                   parse_question(item.question, map, item.options),
                   {}, {}};

  const char oracle_letter = answer_question(map, ctx.question);
  if (oracle_letter != item.gold_answer) {
    throw Error(ErrorKind::inconsistency,
                "item " + item.id + ": stored answer " + std::string(1, item.gold_answer) +
                    " contradicts the oracle's " + std::string(1, oracle_letter));
  }
  const auto answer_object = resolve_question(map, ctx.question);

  std::map<std::string, std::string> header_slots = {{"image_count", count_word(item.images.size())}};
  if (!ctx.is_rotation) {
    ctx.common_anchor = find_common_anchor(item, map);
    header_slots["anchor"] = ctx.common_anchor;
  }
  ctx.sentences.push_back(ctx.templates.fill("header", header_slots));

  emit_observations(ctx);
  if (item.setting != Setting::around) {
    emit_rotation_identification(ctx);
  }
  emit_inferences(ctx);
  emit_opposite_block(ctx, answer_object);
  emit_restatement(ctx);

  const std::string option_text = item.options[static_cast<size_t>(item.gold_answer - 'A')].text;
  ctx.sentences.push_back(ctx.templates.fill(
      "answer", {{"letter", std::string(1, item.gold_answer)}, {"option", option_text}}));

  std::ostringstream text;
  for (size_t i = 0; i < ctx.sentences.size(); ++i) {
    if (i > 0) text << " ";
    text << ctx.sentences[i];
  }
  return ReasoningChain{item.setting, text.str(), item.gold_answer};
}

}  // namespace cogforge
