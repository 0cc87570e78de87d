#include "labelguide/guidance.hpp"

#include <algorithm>
#include <cmath>

namespace labelguide {

namespace {

Vec3 lerp(const Vec3& a, const Vec3& b, double t) { return a + t * (b - a); }

double distance_to_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (a + t * ab - p).norm();
}

}  // namespace

Trajectory make_trajectory(const Vec3& p_s, const Vec3& p_e, const Vec3& p_v) {
  if ((p_e - p_s).norm() <= 1e-12) {
    throw Error(ErrorCode::DegenerateFlight, "flight start and end coincide");
  }
  const Vec3 p_m1 = lerp(p_s, p_e, 1.0 / 3.0);
  const Vec3 p_m2 = lerp(p_s, p_e, 2.0 / 3.0);
  const Vec3 to_m1 = p_m1 - p_v;
  const Vec3 to_m2 = p_m2 - p_v;
  if (distance_to_segment(p_v, p_s, p_e) <= 1e-9 || to_m1.norm() <= 1e-12 ||
      to_m2.norm() <= 1e-12) {
    return Trajectory{{p_s, p_m1, p_m2, p_e}};
  }
  const Vec3 c1 = p_v + (p_e - p_s).norm() * to_m1.normalized();
  const Vec3 c2 = p_v + (p_v - p_e).norm() * to_m2.normalized();
  return Trajectory{{p_s, c1, c2, p_e}};
}

Vec3 eval_trajectory(const Trajectory& traj, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::ParameterOutOfRange, "curve parameter outside [0, 1]");
  }
  if (t == 0.0) return traj.control[0];
  if (t == 1.0) return traj.control[3];
  std::array<Vec3, 4> p = traj.control;
  for (int level = 3; level > 0; --level) {
    for (int i = 0; i < level; ++i) p[i] = lerp(p[i], p[i + 1], t);
  }
  return p[0];
}

Vec3 trajectory_tangent(const Trajectory& traj, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::ParameterOutOfRange, "curve parameter outside [0, 1]");
  }
  const auto& c = traj.control;
  const Vec3 d0 = 3.0 * (c[1] - c[0]);
  const Vec3 d1 = 3.0 * (c[2] - c[1]);
  const Vec3 d2 = 3.0 * (c[3] - c[2]);
  const double u = 1.0 - t;
  return u * u * d0 + 2.0 * u * t * d1 + t * t * d2;
}

std::vector<Vec3> sample_trajectory(const Trajectory& traj, int samples) {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    out.push_back(eval_trajectory(traj, static_cast<double>(i) / (samples - 1)));
  }
  return out;
}

double normalized_alignment(const ScreenVec& vec_l, const ScreenVec& vec_g) {
  const double nl = vec_l.norm();
  const double ng = vec_g.norm();
  if (nl <= 1e-12 || ng <= 1e-12) {
    throw Error(ErrorCode::DegenerateVector, "alignment needs non-zero vectors");
  }
  const double c = std::clamp(vec_l.dot(vec_g) / (nl * ng), -1.0, 1.0);
  return (c + 1.0) / 2.0;
}

double update_speed(double s, double alpha, double dis_lg) {
  return s + (1.0 - s) * alpha * (1.0 - dis_lg);
}

const FlightState* GuidanceState::find(LabelId id) const {
  for (const auto& f : flights) {
    if (f.label_id == id) return &f;
  }
  return nullptr;
}

const FlightState* GuidanceState::find_anchor(ObjectId anchor) const {
  for (const auto& f : flights) {
    if (f.anchor == anchor && f.valid) return &f;
  }
  return nullptr;
}

FlightState start_flight(LabelId label, ObjectId anchor, const Vec3& start, const Vec3& anchor_pos,
                         const Vec3& viewpoint, const GuidanceParams& params) {
  FlightState f;
  f.label_id = label;
  f.anchor = anchor;
  f.trajectory = make_trajectory(start, anchor_pos, viewpoint);
  f.s = params.initial_speed;
  return f;
}

ScreenVec flight_screen_position(const FlightState& flight, const ViewState& view,
                                 const Projection& proj) {
  return world_to_screen_clamped(flight.position(), view, proj);
}

std::optional<ScreenVec> flight_screen_direction(const FlightState& flight, const ViewState& view,
                                                 const Projection& proj, FlightDirection mode) {
  ScreenVec d;
  if (mode == FlightDirection::Chord) {
    d = world_to_screen_clamped(flight.trajectory.end(), view, proj) -
        world_to_screen_clamped(flight.trajectory.start(), view, proj);
  } else {
    const Vec3 p = flight.position();
    const Vec3 v = trajectory_tangent(flight.trajectory, flight.t);
    const Vec3 rel = p - view.viewpoint;
    const double z = rel.dot(view.view_dir);
    if (z > 1e-12) {
      // Quotient rule on lateral / z; the positive 1 / (z^2 tan) factor is dropped.
      const ScreenVec lateral(rel.dot(view.right()), rel.dot(view.up));
      const ScreenVec dlateral(v.dot(view.right()), v.dot(view.up));
      d = dlateral * z - lateral * v.dot(view.view_dir);
    } else {
      const Vec3 ahead = p + 1e-3 * v;
      d = world_to_screen_clamped(ahead, view, proj) - world_to_screen_clamped(p, view, proj);
    }
  }
  if (d.norm() <= 1e-12) return std::nullopt;
  return d.normalized();
}

std::vector<Label> select_candidates(const MultiCircleLayout& layout, const ScreenVec& gaze_dir) {
  std::vector<Label> out;
  for (const auto& circle : layout.circles) {
    for (const auto& l : circle.entries) {
      const ScreenVec orient(std::cos(l.rad), std::sin(l.rad));
      if (orient.dot(gaze_dir) > 0.0) out.push_back(l);
    }
  }
  return out;
}

std::vector<LabelId> prune_invalid(GuidanceState& state, const std::optional<ScreenVec>& gaze_dir,
                                   const ViewState& view, const Projection& proj,
                                   FlightDirection mode) {
  std::vector<LabelId> removed;
  if (!gaze_dir) return removed;
  for (auto& f : state.flights) {
    if (!f.valid || f.arrived()) continue;
    const auto dir = flight_screen_direction(f, view, proj, mode);
    if (dir && dir->dot(*gaze_dir) < 0.0) {
      f.valid = false;
      removed.push_back(f.label_id);
    }
  }
  std::erase_if(state.flights, [](const FlightState& f) { return !f.valid; });
  state.pruned.insert(state.pruned.end(), removed.begin(), removed.end());
  return removed;
}

GuidanceStep step_guidance(GuidanceState& state, const ViewState& view, const Projection& proj,
                           const GazeTrace& trace, double dt, const GuidanceParams& params,
                           double motion_threshold) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "guidance step needs dt > 0");

  GuidanceStep step;
  const auto fitted = fit_gaze_direction(trace, motion_threshold);
  if (fitted) state.last_gaze_dir = fitted;
  step.pruned = prune_invalid(state, fitted, view, proj, params.direction);

  const double half_diag = proj.half_diagonal();
  for (auto& f : state.flights) {
    if (f.arrived()) {
      f.waited += dt;
      continue;
    }
    double alpha = 0.0;
    const auto vec_l = flight_screen_direction(f, view, proj, params.direction);
    if (vec_l && state.last_gaze_dir) alpha = normalized_alignment(*vec_l, *state.last_gaze_dir);
    const ScreenVec pos = flight_screen_position(f, view, proj);
    const double dis_lg = std::clamp((pos - view.gaze).norm() / half_diag, 0.0, 1.0);
    f.s = std::clamp(update_speed(f.s, alpha, dis_lg), f.s, 1.0);
    f.t = std::min(1.0, f.t + f.s * dt / params.flight_seconds);
    if (f.arrived()) step.arrived.push_back(f.label_id);
  }

  for (const auto& f : state.flights) {
    if (f.arrived() && f.waited >= params.confirm_timeout) step.expired.push_back(f.label_id);
  }
  std::erase_if(state.flights, [&](const FlightState& f) {
    return f.arrived() && f.waited >= params.confirm_timeout;
  });
  return step;
}

}  // namespace labelguide
