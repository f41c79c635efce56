// cogforge: curation and evaluation front-end.
//
// Subcommands:
//   generate      input items -> SFT dataset JSONL + training manifest
//   evaluate      responses + gold -> accuracy/graph report (JSON + table)
//   oracle-check  audit that every stored answer matches the layout oracle
//   manifest      emit the training-settings manifest on its own
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cogforge/cogmap.hpp"
#include "cogforge/goldens.hpp"
#include "cogforge/ingest.hpp"
#include "cogforge/metrics.hpp"
#include "cogforge/oracle.hpp"
#include "cogforge/parse.hpp"
#include "cogforge/reasoning.hpp"
#include "cogforge/tasks.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

#ifndef COGFORGE_DEFAULT_TEMPLATE_DIR
#define COGFORGE_DEFAULT_TEMPLATE_DIR "templates"
#endif

std::string template_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("COGFORGE_TEMPLATES"); env != nullptr && *env != '\0') {
    return env;
  }
  return COGFORGE_DEFAULT_TEMPLATE_DIR;
}

cogforge::TaskConfig parse_config_flag(const std::string& name) {
  const auto config = cogforge::task_config_from_name(name);
  if (!config) {
    throw CLI::ValidationError("--config", "unknown task config \"" + name + "\"");
  }
  return *config;
}

void ensure_out_dir(const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw cogforge::Error(cogforge::ErrorKind::io,
                          "cannot create output directory " + out_dir + ": " + ec.message());
  }
}

void report_line_errors(const cogforge::DatasetFile& dataset) {
  for (const auto& err : dataset.line_errors) {
    std::cerr << "warning: " << dataset.path << ":" << err.line << ": " << err.message << "\n";
  }
}

struct GenerateArgs {
  std::string input;
  std::string out_dir = "out";
  std::string config_name;
  std::string schema_name;
  std::string templates;
  bool strict = false;
  long long seed = 0;  // reserved for fixture sampling; the pipeline itself is deterministic
};

int run_generate(const GenerateArgs& args) {
  const cogforge::TaskConfig config = parse_config_flag(args.config_name);

  cogforge::CogmapSchema aux_schema = cogforge::CogmapSchema::augmented;
  if (!args.schema_name.empty()) {
    const auto parsed = cogforge::cogmap_schema_from_name(args.schema_name);
    if (!parsed) {
      throw CLI::ValidationError("--schema", "expected augmented or plain");
    }
    aux_schema = *parsed;
    const auto implied = cogforge::config_cogmap_schema(config);
    if (implied && *implied != aux_schema) {
      throw CLI::ValidationError("--schema", std::string("config ") +
                                                 cogforge::task_config_name(config) + " implies the " +
                                                 cogforge::cogmap_schema_name(*implied) + " schema");
    }
  } else if (const auto implied = cogforge::config_cogmap_schema(config)) {
    aux_schema = *implied;
  }

  const auto dataset = cogforge::load_items(args.input);
  report_line_errors(dataset);
  if (args.strict && !dataset.line_errors.empty()) {
    std::cerr << "error: " << dataset.line_errors.size() << " malformed input lines (strict mode)\n";
    return kExitData;
  }
  cogforge::require_items(dataset);

  const std::string dir = template_dir(args.templates);
  const auto instructions = cogforge::InstructionTemplates::load(dir);
  const auto reasoning_templates = cogforge::TemplateLibrary::load(dir);

  ensure_out_dir(args.out_dir);
  const std::string dataset_path = args.out_dir + "/dataset.jsonl";
  const std::string cogmaps_path = args.out_dir + "/cogmaps.jsonl";
  const std::string manifest_path = args.out_dir + "/manifest.txt";

  // Pre-compose so non-strict runs can skip bad items with a warning while
  // strict runs abort naming the first offender.
  std::vector<cogforge::SceneItem> composable;
  std::map<cogforge::Setting, int> per_setting;
  for (const auto& item : dataset.items) {
    try {
      // Every item needs a generable map: the config may embed it and
      // cogmaps.jsonl always records it.
      std::optional<cogforge::CognitiveMap> map = cogforge::generate_cogmap(item);
      std::optional<cogforge::ReasoningChain> chain;
      if (cogforge::config_has_think_block(config)) {
        chain = cogforge::generate_reasoning(item, *map, reasoning_templates);
      }
      cogforge::compose(item, config, map, chain, instructions);
      composable.push_back(item);
      ++per_setting[item.setting];
    } catch (const cogforge::Error& e) {
      if (args.strict) {
        std::cerr << "error: item " << item.id << ": " << e.what() << "\n";
        return kExitData;
      }
      std::cerr << "warning: skipping item " << item.id << ": " << e.what() << "\n";
    }
  }
  if (composable.empty()) {
    std::cerr << "error: no composable items\n";
    return kExitData;
  }

  const size_t count = cogforge::emit_dataset(composable, config, reasoning_templates,
                                              instructions, dataset_path);

  {
    std::ofstream out(cogmaps_path, std::ios::binary);
    if (!out) {
      throw cogforge::Error(cogforge::ErrorKind::io, "cannot write " + cogmaps_path);
    }
    for (const auto& item : composable) {
      ordered_json line;
      line["id"] = item.id;
      line["setting"] = cogforge::setting_name(item.setting);
      line["cogmap"] = cogforge::serialize_cogmap(cogforge::generate_cogmap(item), aux_schema);
      out << line.dump() << "\n";
    }
  }
  cogforge::emit_sft_manifest(config, dataset_path, manifest_path);

  std::cout << "wrote " << count << " records to " << dataset_path << "\n";
  for (const auto& [setting, n] : per_setting) {
    std::cout << "  " << cogforge::setting_name(setting) << ": " << n << "\n";
  }
  std::cout << "manifest: " << manifest_path << "\n";
  return kExitOk;
}

struct EvaluateArgs {
  std::string responses;
  std::string gold;
  std::string out_dir = "out";
  bool strict = false;
};

int run_evaluate(const EvaluateArgs& args) {
  std::ifstream responses_in(args.responses);
  if (!responses_in) {
    throw cogforge::Error(cogforge::ErrorKind::io, "cannot open " + args.responses);
  }
  std::map<std::string, std::string> responses;
  std::string line;
  int line_no = 0;
  while (std::getline(responses_in, line)) {
    ++line_no;
    if (cogforge::trim(line).empty()) continue;
    const ordered_json record = ordered_json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.contains("id") || !record.contains("output")) {
      std::cerr << "warning: " << args.responses << ":" << line_no
                << ": expected {id, output}; line skipped\n";
      continue;
    }
    const std::string id = record["id"].get<std::string>();
    if (!responses.emplace(id, record["output"].get<std::string>()).second) {
      throw cogforge::Error(cogforge::ErrorKind::duplicate_id,
                            "duplicate response id \"" + id + "\"");
    }
  }

  struct GoldRow {
    char answer;
    cogforge::Setting setting;
    std::optional<cogforge::CognitiveMap> cogmap;
  };
  std::ifstream gold_in(args.gold);
  if (!gold_in) {
    throw cogforge::Error(cogforge::ErrorKind::io, "cannot open " + args.gold);
  }
  std::vector<std::pair<std::string, GoldRow>> gold_rows;
  std::set<std::string> gold_ids;
  line_no = 0;
  while (std::getline(gold_in, line)) {
    ++line_no;
    if (cogforge::trim(line).empty()) continue;
    const ordered_json record = ordered_json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.contains("id") || !record.contains("answer") ||
        !record.contains("setting")) {
      std::cerr << "warning: " << args.gold << ":" << line_no
                << ": expected {id, answer, setting[, cogmap]}; line skipped\n";
      continue;
    }
    const std::string id = record["id"].get<std::string>();
    if (!gold_ids.insert(id).second) {
      throw cogforge::Error(cogforge::ErrorKind::duplicate_id, "duplicate gold id \"" + id + "\"");
    }
    const auto setting = cogforge::setting_from_name(record["setting"].get<std::string>());
    if (!setting) {
      std::cerr << "warning: " << args.gold << ":" << line_no << ": unknown setting; line skipped\n";
      continue;
    }
    GoldRow row{record["answer"].get<std::string>().at(0), *setting, std::nullopt};
    if (record.contains("cogmap")) {
      const std::string text = record["cogmap"].is_string()
                                   ? record["cogmap"].get<std::string>()
                                   : record["cogmap"].dump();
      row.cogmap = cogforge::parse_cogmap(text);
    }
    gold_rows.emplace_back(id, std::move(row));
  }

  std::vector<cogforge::GradedResult> graded;
  std::vector<cogforge::CogmapPair> cogmap_pairs;
  std::vector<std::string> missing;
  for (const auto& [id, row] : gold_rows) {
    const auto it = responses.find(id);
    if (it == responses.end()) {
      missing.push_back(id);
      continue;
    }
    const cogforge::ParsedResponse parsed = cogforge::parse_response(it->second);
    graded.push_back({row.setting, cogforge::grade(parsed.answer, row.answer)});
    if (row.cogmap) {
      cogmap_pairs.push_back(
          {parsed.cogmap_valid ? parsed.cogmap : std::nullopt, *row.cogmap});
    }
  }
  for (const auto& id : missing) {
    std::cerr << "warning: no response for gold id \"" << id << "\"\n";
  }
  for (const auto& [id, text] : responses) {
    if (gold_ids.find(id) == gold_ids.end()) {
      std::cerr << "warning: response id \"" << id << "\" has no gold row\n";
    }
  }
  if (graded.empty()) {
    throw cogforge::Error(cogforge::ErrorKind::empty_run, "no response joined a gold row");
  }
  if (args.strict && !missing.empty()) {
    std::cerr << "error: " << missing.size() << " gold rows had no response (strict mode)\n";
    return kExitData;
  }

  cogforge::EvalReport report = cogforge::qa_accuracy(graded);
  if (!cogmap_pairs.empty()) {
    report.graph = cogforge::cogmap_metrics(cogmap_pairs);
  }

  ensure_out_dir(args.out_dir);
  const std::string table = cogforge::render_table(report, "Run");
  {
    std::ofstream out(args.out_dir + "/report.json", std::ios::binary);
    out << cogforge::report_to_json(report).dump(2) << "\n";
  }
  {
    std::ofstream out(args.out_dir + "/report.txt", std::ios::binary);
    out << table;
  }
  std::cout << table;
  return kExitOk;
}

struct OracleCheckArgs {
  std::string input;
};

int run_oracle_check(const OracleCheckArgs& args) {
  const auto dataset = cogforge::load_items(args.input);
  report_line_errors(dataset);
  cogforge::require_items(dataset);

  int failures = 0;
  for (const auto& item : dataset.items) {
    try {
      const auto map = cogforge::generate_cogmap(item);
      const auto question = cogforge::parse_question(item.question, map, item.options);
      const char oracle = cogforge::answer_question(map, question);
      if (oracle != item.gold_answer) {
        std::cerr << "mismatch: item " << item.id << ": stored " << item.gold_answer
                  << ", oracle " << oracle << "\n";
        ++failures;
      }
    } catch (const cogforge::Error& e) {
      std::cerr << "mismatch: item " << item.id << ": " << e.what() << "\n";
      ++failures;
    }
  }
  std::cout << (dataset.items.size() - static_cast<size_t>(failures)) << "/" << dataset.items.size()
            << " items agree with the oracle\n";
  return failures == 0 ? kExitOk : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial-reasoning SFT data curation and evaluation"};
  app.require_subcommand(1);

  GenerateArgs generate_args;
  auto* generate = app.add_subcommand("generate", "Compose SFT records from scene items");
  generate->add_option("--input", generate_args.input, "Scene items JSONL")->required();
  generate->add_option("--out", generate_args.out_dir, "Output directory");
  generate->add_option("--config", generate_args.config_name, "Task config name")->required();
  generate->add_option("--schema", generate_args.schema_name, "Cogmap schema for cogmaps.jsonl");
  generate->add_option("--templates", generate_args.templates, "Template directory override");
  generate->add_flag("--strict", generate_args.strict, "Treat warnings as errors");
  generate->add_option("--seed", generate_args.seed, "Seed for sampled fixtures (reserved)");

  EvaluateArgs evaluate_args;
  auto* evaluate = app.add_subcommand("evaluate", "Grade tagged model responses");
  evaluate->add_option("--responses", evaluate_args.responses, "Responses JSONL {id, output}")
      ->required();
  evaluate->add_option("--gold", evaluate_args.gold, "Gold JSONL {id, answer, setting[, cogmap]}")
      ->required();
  evaluate->add_option("--out", evaluate_args.out_dir, "Output directory");
  evaluate->add_flag("--strict", evaluate_args.strict, "Treat warnings as errors");

  OracleCheckArgs oracle_args;
  auto* oracle_check =
      app.add_subcommand("oracle-check", "Validate stored answers against the layout oracle");
  oracle_check->add_option("--input", oracle_args.input, "Scene items JSONL")->required();

  std::string manifest_config;
  std::string manifest_out;
  std::string manifest_dataset = "dataset.jsonl";
  auto* manifest = app.add_subcommand("manifest", "Emit the training-settings manifest");
  manifest->add_option("--config", manifest_config, "Task config name")->required();
  manifest->add_option("--out", manifest_out, "Output file (default stdout)");
  manifest->add_option("--dataset", manifest_dataset, "Dataset path recorded in the manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return run_generate(generate_args);
    if (evaluate->parsed()) return run_evaluate(evaluate_args);
    if (oracle_check->parsed()) return run_oracle_check(oracle_args);
    if (manifest->parsed()) {
      const auto config = parse_config_flag(manifest_config);
      const std::string text = cogforge::emit_sft_manifest(config, manifest_dataset, manifest_out);
      if (manifest_out.empty()) std::cout << text;
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cogforge::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
