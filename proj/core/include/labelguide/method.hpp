#pragma once

#include <span>
#include <string_view>

#include "labelguide/layout.hpp"

namespace labelguide {

/// Second-level layout conditions. CC1 is free visual search and has no
/// layout; it only exists as a null baseline.
enum class MethodCondition { CC1, CC2, EC1, EC2, EC3 };

std::string_view to_string(MethodCondition m);
/// Accepts "cc1".."ec3" in any case. Throws InvalidArgument.
MethodCondition parse_method(std::string_view text);

/// EC1, EC2 and CC2 select one label by dwell; EC3 selects candidates from
/// the gaze direction.
bool uses_gaze_direction(MethodCondition m);
/// CC2 shows every label at once and skips the letter ring.
bool uses_first_level(MethodCondition m);

/// Second-level layout for the given condition, centered on view.gaze.
/// For CC2 `labels` should be the whole scene. Throws InvalidArgument for CC1.
MultiCircleLayout layout_for(MethodCondition m, std::span<const Label> labels,
                             std::span<const SceneObject> objects, const ViewState& view,
                             const Projection& proj, const LayoutParams& params);

}  // namespace labelguide
