#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cogforge/scene.hpp"

namespace cogforge {

enum class QuestionKind {
  /// Which object lies in the given direction of the anchor, judged in the
  /// frame of the named view. Nearest object wins; equal distances are an
  /// ambiguity error.
  relative_to_anchor_from_view,
  /// Which object is behind the viewer of the named view. Resolved through
  /// the mirrored opposite view when one exists, else directly from
  /// coordinates.
  behind_viewer_from_view,
  /// Which object does the view see beyond the anchor along its facing ray.
  front_object_in_view,
};

struct Question {
  QuestionKind kind = QuestionKind::relative_to_anchor_from_view;
  int view_index = 1;  // 1-based
  std::string anchor;  // may be empty for behind_viewer questions
  std::optional<Direction> direction;
  std::vector<SceneOption> options;
};

/// Nearest object strictly along the view's facing ray beyond the anchor
/// object, the anchor being the first object the ray hits. nullopt when the
/// ray hits fewer than two objects. view_index out of range is a range error.
std::optional<std::string> front_object(const CognitiveMap& map, int view_index);

/// First object on the view's facing ray: what the camera is looking at.
std::optional<std::string> looked_at_object(const CognitiveMap& map, int view_index);

/// Index of the first view whose facing is the half turn of the given view's
/// facing; nullopt when absent. Ties break toward the lowest index.
std::optional<int> opposite_view(const CognitiveMap& map, int view_index);

/// Nearest object (L1) whose displacement from `from` classifies as `dir`
/// for a viewer with the given facing. Objects named exclude_name and
/// objects sitting exactly on `from` are skipped. A distance tie between two
/// candidates is an ambiguity error.
std::optional<std::string> object_in_direction(const CognitiveMap& map, Facing viewer_facing,
                                               GridPos from, Direction dir,
                                               const std::string& exclude_name = {});

/// Resolve a question to the name of an object, or nullopt when the queried
/// slot is empty. Ambiguous layouts (two candidates at the same direction
/// and distance) are an ambiguity error.
std::optional<std::string> resolve_question(const CognitiveMap& map, const Question& q);

/// resolve_question plus option lookup: returns the letter of the option
/// whose text names the computed object (case-insensitive). An empty slot
/// maps to a "none of the above" option when one exists. Anything else is
/// an unanswerable error.
char answer_question(const CognitiveMap& map, const Question& q);

/// Build a Question from an item's natural-language question string. The
/// grammar is fixed: a view reference ("image 4", "view 2", "the first
/// view"), a direction phrase ("on the left side of", "right of", "behind",
/// "in front of", or the viewer-relative "behind me/you"), and an anchor
/// matched against the map's object names. Phrases are mapped to grid
/// directions from the viewer's seat: an object "behind" the anchor lies
/// further along the facing, one "in front of" it lies nearer.
Question parse_question(const std::string& question_text, const CognitiveMap& map,
                        const std::vector<SceneOption>& options);

}  // namespace cogforge
