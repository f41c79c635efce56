#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cogforge/cogmap.hpp"
#include "cogforge/reasoning.hpp"
#include "cogforge/scene.hpp"

namespace cogforge {

/// The seven prompt/output configurations. Each value fixes whether a cogmap
/// is injected into the input and which of the cogmap/think/answer blocks
/// the expected output carries, in which schema.
enum class TaskConfig {
  RawQA,
  AugCGMapIn,
  AugCGMapOut,
  PlainCGMapOut,
  FFRsn,
  AugCGMapFFROut,
  PlainCGMapFFROut,
};

inline constexpr std::array<TaskConfig, 7> kAllTaskConfigs = {
    TaskConfig::RawQA,         TaskConfig::AugCGMapIn,    TaskConfig::AugCGMapOut,
    TaskConfig::PlainCGMapOut, TaskConfig::FFRsn,         TaskConfig::AugCGMapFFROut,
    TaskConfig::PlainCGMapFFROut,
};

/// Canonical display name, e.g. "Aug-CGMap-FFR-Out".
const char* task_config_name(TaskConfig config);

/// Case-insensitive and hyphen/underscore-insensitive lookup, so
/// "aug_cgmap_out" and "AugCGMap-Out" both resolve.
std::optional<TaskConfig> task_config_from_name(const std::string& name);

bool config_has_cogmap_in_input(TaskConfig config);
bool config_has_cogmap_block(TaskConfig config);
bool config_has_think_block(TaskConfig config);
std::optional<CogmapSchema> config_cogmap_schema(TaskConfig config);

/// Per-config instruction prose appended to the prompt, loaded from
/// instr_<config>.txt under the template directory. The Aug-CGMap-In file
/// carries a {cogmap} slot for the injected map.
struct InstructionTemplates {
  static InstructionTemplates load(const std::string& template_dir);
  const std::string& text(TaskConfig config) const;

 private:
  std::array<std::string, 7> texts_;
};

struct TrainingRecord {
  std::string id;
  std::vector<std::string> images;
  std::string input;
  std::string target;
  TaskConfig config = TaskConfig::RawQA;
  Setting setting = Setting::among;
};

/// Build one SFT record. The input is the question, the lettered options,
/// and the config's instruction text (with the augmented map injected for
/// Aug-CGMap-In). The target is the expected-output skeleton: an optional
/// "Based on my observation..." cogmap block, an optional <think> block, and
/// always a final <answer> block carrying "L. option text". A missing map or
/// chain required by the config is a composition error.
TrainingRecord compose(const SceneItem& item, TaskConfig config,
                       const std::optional<CognitiveMap>& map,
                       const std::optional<ReasoningChain>& chain,
                       const InstructionTemplates& instructions);

/// Compose every item under one config and write JSONL records with keys
/// {id, images, input, target}. Any composition failure aborts naming the
/// offending item. Returns the record count. Re-running over the same
/// inputs produces byte-identical output.
size_t emit_dataset(const std::vector<SceneItem>& items, TaskConfig config,
                    const TemplateLibrary& reasoning_templates,
                    const InstructionTemplates& instructions, const std::string& out_path);

/// Write the flat "key = value" training-settings manifest for a config and
/// dataset path; returns the manifest text.
std::string emit_sft_manifest(TaskConfig config, const std::string& dataset_path,
                              const std::string& out_path);

}  // namespace cogforge
