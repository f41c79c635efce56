#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cogforge/scene.hpp"

namespace cogforge {

/// Everything recoverable from one raw model response. Parsing is tolerant
/// and records every deviation in notes so the grader can tell a wrong map
/// from an unparseable one.
struct ParsedResponse {
  std::optional<CognitiveMap> cogmap;
  bool cogmap_valid = false;
  std::optional<std::string> raw_cogmap_text;
  std::optional<std::string> think;
  std::optional<char> answer;
  std::vector<std::string> notes;
};

struct TagSegment {
  std::string content;
  bool closed = true;
};

/// Content between the first <tag> and its matching </tag>. An unclosed tag
/// yields everything to end-of-text with closed=false; an absent tag yields
/// nullopt.
std::optional<TagSegment> extract_tag(const std::string& text, const std::string& tag);

/// Parse a cogmap segment: code fences and stray quote runs are stripped,
/// then the first balanced {...} is decoded. "objects"/"views" keys select
/// the augmented schema; any other object is read as the plain name ->
/// {"position": ...} mapping. Off-grid positions parse fine but add an
/// off_grid note. Undecodable text is an invalid-cogmap error.
CognitiveMap parse_cogmap(const std::string& text, std::vector<std::string>* notes = nullptr);

/// Extract the committed answer letter. With <answer> tags the last tag
/// wins; otherwise the final 200 characters are scanned. A candidate is a
/// standalone capital letter followed by '.', ')' or the end of the
/// segment. Never throws; returns nullopt when nothing matches.
std::optional<char> parse_answer(const std::string& text);

/// Full tolerant parse of a raw response: cogmap, reasoning, answer.
ParsedResponse parse_response(const std::string& text);

}  // namespace cogforge
