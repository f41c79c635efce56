#include "cogforge/tasks.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cogforge {

using nlohmann::ordered_json;

namespace {

struct ConfigInfo {
  TaskConfig config;
  const char* name;
  const char* file_stem;
  bool cogmap_in_input;
  bool cogmap_block;
  bool think_block;
  std::optional<CogmapSchema> schema;
};

constexpr std::array<ConfigInfo, 7> kConfigs = {{
    {TaskConfig::RawQA, "Raw-QA", "raw_qa", false, false, false, std::nullopt},
    {TaskConfig::AugCGMapIn, "Aug-CGMap-In", "aug_cgmap_in", true, false, false,
     CogmapSchema::augmented},
    {TaskConfig::AugCGMapOut, "Aug-CGMap-Out", "aug_cgmap_out", false, true, false,
     CogmapSchema::augmented},
    {TaskConfig::PlainCGMapOut, "Plain-CGMap-Out", "plain_cgmap_out", false, true, false,
     CogmapSchema::plain},
    {TaskConfig::FFRsn, "FF-Rsn", "ff_rsn", false, false, true, std::nullopt},
    {TaskConfig::AugCGMapFFROut, "Aug-CGMap-FFR-Out", "aug_cgmap_ffr_out", false, true, true,
     CogmapSchema::augmented},
    {TaskConfig::PlainCGMapFFROut, "Plain-CGMap-FFR-Out", "plain_cgmap_ffr_out", false, true, true,
     CogmapSchema::plain},
}};

const ConfigInfo& info(TaskConfig config) { return kConfigs[static_cast<size_t>(config)]; }

std::string canonical_key(const std::string& name) {
  std::string key;
  for (char c : name) {
    if (c == '-' || c == '_' || c == ' ') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return key;
}

constexpr const char* kCogmapPreamble = "Based on my observation, the answer is:";

std::string answer_block(const SceneItem& item) {
  const auto& option = item.options[static_cast<size_t>(item.gold_answer - 'A')];
  return std::string("<answer>") + item.gold_answer + ". " + option.text + "</answer>";
}

std::string cogmap_block(const CognitiveMap& map, CogmapSchema schema) {
  return "<cogmap>\n```json\n" + serialize_cogmap(map, schema) + "\n```\n</cogmap>";
}

std::string fill_slot(const std::string& text, const std::string& slot, const std::string& value) {
  const std::string token = "{" + slot + "}";
  std::string out = text;
  size_t pos;
  while ((pos = out.find(token)) != std::string::npos) {
    out.replace(pos, token.size(), value);
  }
  return out;
}

}  // namespace

const char* task_config_name(TaskConfig config) { return info(config).name; }

std::optional<TaskConfig> task_config_from_name(const std::string& name) {
  const std::string key = canonical_key(name);
  for (const auto& entry : kConfigs) {
    if (key == canonical_key(entry.name)) return entry.config;
  }
  // Also accept the enum spellings (RawQA, AugCGMapFFROut, ...).
  static const std::array<const char*, 7> kEnumNames = {
      "RawQA", "AugCGMapIn", "AugCGMapOut", "PlainCGMapOut",
      "FFRsn", "AugCGMapFFROut", "PlainCGMapFFROut"};
  for (size_t i = 0; i < kEnumNames.size(); ++i) {
    if (key == canonical_key(kEnumNames[i])) return static_cast<TaskConfig>(i);
  }
  return std::nullopt;
}

bool config_has_cogmap_in_input(TaskConfig config) { return info(config).cogmap_in_input; }
bool config_has_cogmap_block(TaskConfig config) { return info(config).cogmap_block; }
bool config_has_think_block(TaskConfig config) { return info(config).think_block; }
std::optional<CogmapSchema> config_cogmap_schema(TaskConfig config) { return info(config).schema; }

InstructionTemplates InstructionTemplates::load(const std::string& template_dir) {
  InstructionTemplates templates;
  for (const auto& entry : kConfigs) {
    const std::string path = template_dir + "/instr_" + entry.file_stem + ".txt";
    std::ifstream in(path);
    if (!in) {
      throw Error(ErrorKind::io, "cannot open instruction template " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string text = trim(buffer.str());
    if (text.empty()) {
      throw Error(ErrorKind::template_error, path + " is empty");
    }
    const bool wants_cogmap = text.find("{cogmap}") != std::string::npos;
    if (wants_cogmap != entry.cogmap_in_input) {
      throw Error(ErrorKind::template_error,
                  path + (entry.cogmap_in_input ? " must contain the {cogmap} slot"
                                                : " must not contain a {cogmap} slot"));
    }
    templates.texts_[static_cast<size_t>(entry.config)] = std::move(text);
  }
  return templates;
}

const std::string& InstructionTemplates::text(TaskConfig config) const {
  return texts_[static_cast<size_t>(config)];
}

TrainingRecord compose(const SceneItem& item, TaskConfig config,
                       const std::optional<CognitiveMap>& map,
                       const std::optional<ReasoningChain>& chain,
                       const InstructionTemplates& instructions) {
  const ConfigInfo& cfg = info(config);
  const bool needs_map = cfg.cogmap_block || cfg.cogmap_in_input;
  if (needs_map && !map) {
    throw Error(ErrorKind::composition,
                "item " + item.id + ": config " + cfg.name + " needs a cognitive map");
  }
  if (cfg.think_block && !chain) {
    throw Error(ErrorKind::composition,
                "item " + item.id + ": config " + cfg.name + " needs a reasoning chain");
  }

  TrainingRecord record;
  record.id = item.id;
  record.images = item.images;
  record.config = config;
  record.setting = item.setting;

  std::ostringstream input;
  input << item.question << "\n";
  for (const auto& option : item.options) {
    input << option.letter << ". " << option.text << "\n";
  }
  std::string instruction = instructions.text(config);
  if (cfg.cogmap_in_input) {
    instruction = fill_slot(instruction, "cogmap", serialize_augmented(*map));
  }
  input << instruction;
  record.input = input.str();

  std::ostringstream target;
  if (cfg.cogmap_block) {
    target << kCogmapPreamble << "\n" << cogmap_block(*map, *cfg.schema) << "\n";
  }
  if (cfg.think_block) {
    target << "<think>" << chain->text << "</think>";
  }
  target << answer_block(item);
  record.target = target.str();
  return record;
}

size_t emit_dataset(const std::vector<SceneItem>& items, TaskConfig config,
                    const TemplateLibrary& reasoning_templates,
                    const InstructionTemplates& instructions, const std::string& out_path) {
  std::vector<ordered_json> lines;
  lines.reserve(items.size());
  for (const auto& item : items) {
    try {
      std::optional<CognitiveMap> map;
      if (config_has_cogmap_block(config) || config_has_cogmap_in_input(config)) {
        map = generate_cogmap(item);
      }
      std::optional<ReasoningChain> chain;
      if (config_has_think_block(config)) {
        if (!map) map = generate_cogmap(item);
        chain = generate_reasoning(item, *map, reasoning_templates);
      }
      const TrainingRecord record = compose(item, config, map, chain, instructions);
      ordered_json line;
      line["id"] = record.id;
      line["images"] = record.images;
      line["input"] = record.input;
      line["target"] = record.target;
      lines.push_back(std::move(line));
    } catch (const Error& e) {
      throw Error(ErrorKind::composition,
                  "item " + item.id + " failed to compose: " + e.what());
    }
  }

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::io, "cannot write " + out_path);
  }
  for (const auto& line : lines) {
    out << line.dump() << "\n";
  }
  return lines.size();
}

std::string emit_sft_manifest(TaskConfig config, const std::string& dataset_path,
                              const std::string& out_path) {
  std::ostringstream manifest;
  manifest << "config = " << task_config_name(config) << "\n";
  manifest << "dataset_path = " << dataset_path << "\n";
  manifest << "dataset_size = 10000\n";
  manifest << "epochs = 3\n";
  manifest << "learning_rate = 1e-5\n";
  manifest << "scheduler = cosine\n";
  manifest << "finetuning_type = full-parameter\n";
  manifest << "effective_batch = 256\n";
  manifest << "per_device_batch = 4\n";
  manifest << "grad_accumulation = 32\n";
  manifest << "gpus = 2 x NVIDIA H100\n";
  manifest << "max_pixels = 90000\n";
  manifest << "min_pixels = 784\n";
  manifest << "max_length = 8192\n";
  manifest << "weight_decay = 0\n";
  manifest << "warmup_ratio = 0.03\n";
  manifest << "max_grad_norm = 1\n";
  manifest << "precision = bf16\n";
  manifest << "optimizer = adamw\n";

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      throw Error(ErrorKind::io, "cannot write " + out_path);
    }
    out << manifest.str();
  }
  return manifest.str();
}

}  // namespace cogforge
