#pragma once

#include <array>
#include <optional>
#include <vector>

#include "labelguide/geometry.hpp"
#include "labelguide/layout.hpp"

namespace labelguide {

/// Cubic Bezier flight path [p_s, c1, c2, p_e] in world space.
struct Trajectory {
  std::array<Vec3, 4> control;

  const Vec3& start() const { return control[0]; }
  const Vec3& end() const { return control[3]; }
};

/// Builds the flight curve from label start p_s to anchor p_e so that it
/// bends around the viewpoint p_v. Throws DegenerateFlight when p_s == p_e.
/// When p_v lies on the segment the straight control polygon is used.
Trajectory make_trajectory(const Vec3& p_s, const Vec3& p_e, const Vec3& p_v);

/// De Casteljau evaluation. Throws ParameterOutOfRange outside [0, 1].
Vec3 eval_trajectory(const Trajectory& traj, double t);

/// First derivative with respect to t.
Vec3 trajectory_tangent(const Trajectory& traj, double t);

/// Polyline with `samples` points, t evenly spaced over [0, 1].
std::vector<Vec3> sample_trajectory(const Trajectory& traj, int samples = 64);

/// (cos + 1) / 2 of the angle between the two vectors. Throws
/// DegenerateVector for zero-length input.
double normalized_alignment(const ScreenVec& vec_l, const ScreenVec& vec_g);

/// s + (1 - s) * alpha * (1 - dis_lg).
double update_speed(double s, double alpha, double dis_lg);

enum class FlightDirection { Chord, Tangent };

struct GuidanceParams {
  double flight_seconds = 2.5;
  double initial_speed = 0.3;
  double confirm_timeout = 10.0;
  FlightDirection direction = FlightDirection::Chord;
};

struct FlightState {
  LabelId label_id;
  ObjectId anchor;
  Trajectory trajectory;
  double t = 0.0;
  double s = 0.3;
  bool valid = true;
  /// Seconds spent waiting at the anchor after arriving.
  double waited = 0.0;

  bool arrived() const { return t >= 1.0; }
  Vec3 position() const { return eval_trajectory(trajectory, t); }
};

struct GuidanceState {
  std::vector<FlightState> flights;
  std::optional<LabelId> target_reached;
  /// Every label pruned so far, in pruning order.
  std::vector<LabelId> pruned;
  /// Most recent fitted gaze direction, reused while the gaze is still.
  std::optional<ScreenVec> last_gaze_dir;

  const FlightState* find(LabelId id) const;
  const FlightState* find_anchor(ObjectId anchor) const;
};

FlightState start_flight(LabelId label, ObjectId anchor, const Vec3& start, const Vec3& anchor_pos,
                         const Vec3& viewpoint, const GuidanceParams& params);

/// Screen position of the flying label in the given view, pushed to the
/// display border when it is off screen.
ScreenVec flight_screen_position(const FlightState& flight, const ViewState& view,
                                 const Projection& proj);

/// Screen-space flying direction: the projected start-to-end chord or the
/// projected tangent at the current parameter. Empty when degenerate.
std::optional<ScreenVec> flight_screen_direction(const FlightState& flight, const ViewState& view,
                                                 const Projection& proj, FlightDirection mode);

/// Placed labels whose direction from the layout center is strictly within
/// 90 degrees of gaze_dir.
std::vector<Label> select_candidates(const MultiCircleLayout& layout, const ScreenVec& gaze_dir);

/// Removes flights moving more than 90 degrees away from gaze_dir. Flights
/// already at their anchor are kept. Returns the ids removed by this call.
std::vector<LabelId> prune_invalid(GuidanceState& state, const std::optional<ScreenVec>& gaze_dir,
                                   const ViewState& view, const Projection& proj,
                                   FlightDirection mode = FlightDirection::Chord);

struct GuidanceStep {
  std::vector<LabelId> arrived;
  std::vector<LabelId> pruned;
  std::vector<LabelId> expired;
};

/// Advances every flight by dt seconds: alignment, speed update, parameter
/// advance, pruning, and confirm-timeout expiry. Throws InvalidArgument for
/// dt <= 0.
GuidanceStep step_guidance(GuidanceState& state, const ViewState& view, const Projection& proj,
                           const GazeTrace& trace, double dt, const GuidanceParams& params,
                           double motion_threshold = 0.05);

}  // namespace labelguide
