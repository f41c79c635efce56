#pragma once

#include <string>

#include "cogforge/scene.hpp"

namespace cogforge {

/// Serialization schema for cognitive maps. augmented carries objects and
/// views with facings; plain maps object names straight to positions.
enum class CogmapSchema { augmented, plain };

const char* cogmap_schema_name(CogmapSchema schema);
std::optional<CogmapSchema> cogmap_schema_from_name(const std::string& name);

/// Deterministic rule-based placement of objects and views on the grid,
/// dispatched on the item's setting:
///
///  - around: 2-4 objects in a line starting at [4,5] and extending +x; one
///    view per camera angle at the four cells two steps from the line's
///    midpoint on the cardinal axes, facing the midpoint.
///  - among: objects[0] is the center at [5,5]; the rest fill [5,8], [2,5],
///    [5,2], [8,5] in order; one view per camera angle at distance 1 from
///    the center, facing it.
///  - translation: objects on the vertical line x=5, chained by the relation
///    words ("on" means one cell above, smaller y); one view per image at
///    x=3 facing right, aligned with the corresponding object.
///  - rotation: every view sits at the fixed camera cell [5,5] with facings
///    stepping through the camera angles; each view's focal object is placed
///    3 cells along that view's facing.
///
/// Camera angles are degrees, multiples of 90, mapped as 0 -> south cell
/// facing up, then +90 (clockwise) -> west facing right, north facing down,
/// east facing left. Object orientations from meta_info become object
/// facings. Views are named "Image k" (1-based) in input image order.
CognitiveMap generate_cogmap(const SceneItem& item);

/// Emit the augmented schema: {"objects": [...], "views": [...]} with one
/// entry per line, 2-space indentation, positions as [x, y]. This exact
/// byte layout is embedded in training records and must stay stable.
std::string serialize_augmented(const CognitiveMap& map);

/// Emit the plain schema: object name -> {"position": [x, y]} with 4-space
/// indentation, views and facings omitted. Duplicate object names cannot be
/// represented and raise a schema error.
std::string serialize_plain(const CognitiveMap& map);

std::string serialize_cogmap(const CognitiveMap& map, CogmapSchema schema);

}  // namespace cogforge
