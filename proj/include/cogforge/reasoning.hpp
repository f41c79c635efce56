#pragma once

#include <map>
#include <string>
#include <vector>

#include "cogforge/scene.hpp"

namespace cogforge {

/// Sentence templates for one setting, loaded from a UTF-8 text file with
/// `@section` headers and `{slot}` placeholders. Slots are validated at load
/// time; an unknown slot or section is a template error.
class ReasoningTemplates {
 public:
  static ReasoningTemplates load(const std::string& path, Setting setting);

  const std::string& section(const std::string& name) const;
  bool has_section(const std::string& name) const;
  std::string fill(const std::string& section_name,
                   const std::map<std::string, std::string>& slots) const;
  Setting setting() const { return setting_; }

 private:
  Setting setting_ = Setting::among;
  std::map<std::string, std::string> sections_;
};

/// Templates for the three settings that carry reasoning chains, loaded from
/// reasoning_<setting>.txt under the template directory.
struct TemplateLibrary {
  ReasoningTemplates among;
  ReasoningTemplates around;
  ReasoningTemplates rotation;

  static TemplateLibrary load(const std::string& template_dir);
  const ReasoningTemplates& for_setting(Setting setting) const;
};

/// Grounded chain of template sentences ending in the gold answer.
struct ReasoningChain {
  Setting setting = Setting::among;
  std::string text;
  char bound_answer = 0;
};

/// Assemble the free-form chain for an item over its generated map: one
/// observation sentence per image bound through the ray oracle, the
/// cross-view anchoring sentence, rotation-identification sentences for
/// among/rotation, the view-transfer inferences, the opposite-view block
/// when the queried object sits behind the first view's camera, the
/// perspective restatement, and the final answer sentence.
///
/// Fails loudly instead of emitting an ungrounded chain: a view without a
/// front object is an ungroundable-chain error, and a stored gold answer
/// that contradicts the oracle is an inconsistency error.
ReasoningChain generate_reasoning(const SceneItem& item, const CognitiveMap& map,
                                  const TemplateLibrary& templates);

}  // namespace cogforge
