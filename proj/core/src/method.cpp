#include "labelguide/method.hpp"

#include <string>

namespace labelguide {

std::string_view to_string(MethodCondition m) {
  switch (m) {
    case MethodCondition::CC1: return "cc1";
    case MethodCondition::CC2: return "cc2";
    case MethodCondition::EC1: return "ec1";
    case MethodCondition::EC2: return "ec2";
    case MethodCondition::EC3: return "ec3";
  }
  return "unknown";
}

MethodCondition parse_method(std::string_view text) {
  const std::string key = collation_key(text);
  for (auto m : {MethodCondition::CC1, MethodCondition::CC2, MethodCondition::EC1,
                 MethodCondition::EC2, MethodCondition::EC3}) {
    if (key == to_string(m)) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(text) + "'");
}

bool uses_gaze_direction(MethodCondition m) { return m == MethodCondition::EC3; }

bool uses_first_level(MethodCondition m) { return m != MethodCondition::CC2; }

MultiCircleLayout layout_for(MethodCondition m, std::span<const Label> labels,
                             std::span<const SceneObject> objects, const ViewState& view,
                             const Projection& proj, const LayoutParams& params) {
  if (m == MethodCondition::CC1) {
    throw Error(ErrorCode::InvalidArgument, "cc1 has no label layout");
  }
  if (m == MethodCondition::EC3) return build_second_level(labels, objects, view, proj, params);

  std::vector<std::string> diagnostics;
  const auto initialized = init_label_attrs(labels, objects, view, proj, &diagnostics);
  MultiCircleLayout layout;
  switch (m) {
    case MethodCondition::EC1:
      layout = build_single_sorted_circle(initialized, view.gaze, params);
      break;
    case MethodCondition::EC2:
      layout = build_strict_oriented(initialized, view.gaze, params);
      break;
    default:
      layout = build_full_screen(initialized, view.gaze, params);
      break;
  }
  layout.diagnostics.insert(layout.diagnostics.begin(), diagnostics.begin(), diagnostics.end());
  return layout;
}

}  // namespace labelguide
