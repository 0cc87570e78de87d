#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "labelguide/guidance.hpp"
#include "labelguide/interaction.hpp"
#include "labelguide/layout.hpp"

namespace labelguide {

nlohmann::json to_json(const ScreenVec& v);
nlohmann::json to_json(const Vec3& v);

nlohmann::json first_level_json(const FirstLevelLayout& layout);

/// Circles with per-label {id, text, radian, range, circle_index, x, y},
/// plus dropped labels and diagnostics.
nlohmann::json layout_json(const MultiCircleLayout& layout);

/// SVG drawing in the layout's screen frame, y up, one path per circle.
std::string layout_svg(const MultiCircleLayout& layout, int size_px = 800);

/// Control points plus an evenly sampled polyline.
nlohmann::json trajectory_json(const Trajectory& traj, int samples = 64);

/// Line-delimited event log record {t, session, event, payload}.
nlohmann::json event_record(const PipelineEvent& e, std::string_view session);

}  // namespace labelguide
