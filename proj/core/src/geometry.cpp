#include "labelguide/geometry.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace labelguide {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BehindView: return "BehindView";
    case ErrorCode::DegenerateVector: return "DegenerateVector";
    case ErrorCode::EmptyLabelSet: return "EmptyLabelSet";
    case ErrorCode::UnresolvedAnchor: return "UnresolvedAnchor";
    case ErrorCode::DegenerateFlight: return "DegenerateFlight";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Projection Projection::from_central_fov_deg(double full_fov_deg) {
  if (!(full_fov_deg > 0.0 && full_fov_deg < 180.0)) {
    throw Error(ErrorCode::InvalidArgument, "central FOV must be in (0, 180) degrees");
  }
  Projection p;
  p.central_half_angle = deg_to_rad(full_fov_deg / 2.0);
  if (p.display_half_fov < p.central_half_angle) p.display_half_fov = p.central_half_angle;
  return p;
}

double Projection::half_height() const {
  return std::tan(display_half_fov) / std::tan(central_half_angle);
}

double Projection::half_diagonal() const {
  return std::hypot(half_width(), half_height());
}

bool Projection::on_screen(const ScreenVec& s) const {
  return std::abs(s.x()) <= half_width() && std::abs(s.y()) <= half_height();
}

ViewState ViewState::looking(const Vec3& viewpoint, const Vec3& dir, const Vec3& world_up) {
  ViewState v;
  v.viewpoint = viewpoint;
  v.view_dir = dir.normalized();
  Vec3 up = world_up - world_up.dot(v.view_dir) * v.view_dir;
  if (up.norm() < 1e-9) {
    // Looking straight along world_up; any perpendicular will do.
    up = v.view_dir.unitOrthogonal();
  }
  v.up = up.normalized();
  return v;
}

bool ViewState::is_orthonormal() const {
  return std::abs(view_dir.norm() - 1.0) <= 1e-9 && std::abs(up.norm() - 1.0) <= 1e-9 &&
         std::abs(view_dir.dot(up)) <= 1e-9;
}

Vec3 project_to_plane(const Vec3& v, const Vec3& normal) {
  return v - v.dot(normal) * normal;
}

ScreenVec world_to_screen(const Vec3& p, const ViewState& view, const Projection& proj) {
  const Vec3 d = p - view.viewpoint;
  const double z = d.dot(view.view_dir);
  if (!(z > 0.0)) {
    throw Error(ErrorCode::BehindView, "point is not in front of the viewpoint");
  }
  const double scale = 1.0 / (z * std::tan(proj.central_half_angle));
  return {d.dot(view.right()) * scale, d.dot(view.up) * scale};
}

namespace {

ScreenVec to_border(const ScreenVec& dir, const Projection& proj) {
  const double inf = std::numeric_limits<double>::infinity();
  const double fx = dir.x() != 0.0 ? proj.half_width() / std::abs(dir.x()) : inf;
  const double fy = dir.y() != 0.0 ? proj.half_height() / std::abs(dir.y()) : inf;
  return dir * std::min(fx, fy);
}

}  // namespace

ScreenVec world_to_screen_clamped(const Vec3& p, const ViewState& view,
                                  const Projection& proj) {
  const Vec3 d = p - view.viewpoint;
  const double z = d.dot(view.view_dir);
  const ScreenVec lateral(d.dot(view.right()), d.dot(view.up));
  if (z > 1e-12) {
    const ScreenVec s = lateral / (z * std::tan(proj.central_half_angle));
    if (proj.on_screen(s)) return s;
    return to_border(s, proj);
  }
  if (lateral.norm() <= 1e-12) return to_border(ScreenVec(1.0, 0.0), proj);
  return to_border(lateral, proj);
}

Vec3 screen_ray(const ScreenVec& s, const ViewState& view, const Projection& proj) {
  const double k = std::tan(proj.central_half_angle);
  return (view.view_dir + k * (s.x() * view.right() + s.y() * view.up)).normalized();
}

Vec3 screen_to_world(const ScreenVec& s, const ViewState& view, const Projection& proj,
                     double depth) {
  const double k = std::tan(proj.central_half_angle);
  return view.viewpoint + depth * (view.view_dir + k * (s.x() * view.right() + s.y() * view.up));
}

double wrap_angle(double rad) {
  double r = std::fmod(rad, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double radian_of(const ScreenVec& v) {
  if (v.norm() <= 1e-12) {
    throw Error(ErrorCode::DegenerateVector, "cannot take the radian of a zero vector");
  }
  return wrap_angle(std::atan2(v.y(), v.x()));
}

double angular_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

Vec3 rotate_toward(const Vec3& from, const Vec3& to, double max_angle) {
  const Vec3 f = from.normalized();
  const Vec3 t = to.normalized();
  const double angle = angle_between(f, t);
  if (angle <= max_angle) return t;
  Vec3 axis = f.cross(t);
  if (axis.norm() < 1e-12) axis = f.unitOrthogonal();
  return (Eigen::AngleAxisd(max_angle, axis.normalized()) * f).normalized();
}

GazeTrace::GazeTrace(double window) : window_(window) {
  if (!(window > 0.0)) throw Error(ErrorCode::InvalidArgument, "gaze window must be positive");
}

void GazeTrace::push(double t, const ScreenVec& point) {
  if (!samples_.empty() && !(t > samples_.back().t)) {
    throw Error(ErrorCode::InvalidArgument, "gaze timestamps must be strictly increasing");
  }
  samples_.push_back({t, point});
  while (samples_.front().t < t - window_) samples_.pop_front();
}

std::optional<ScreenVec> fit_gaze_direction(const GazeTrace& trace, double motion_threshold) {
  const auto& s = trace.samples();
  if (s.size() < 2) return std::nullopt;

  const ScreenVec displacement = s.back().point - s.front().point;
  if (displacement.norm() < motion_threshold) return std::nullopt;

  ScreenVec mean = ScreenVec::Zero();
  for (const auto& sample : s) mean += sample.point;
  mean /= static_cast<double>(s.size());

  Eigen::Matrix2d scatter = Eigen::Matrix2d::Zero();
  for (const auto& sample : s) {
    const ScreenVec d = sample.point - mean;
    scatter += d * d.transpose();
  }
  // Eigenvalues come back ascending; the last column is the principal axis.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(scatter);
  ScreenVec dir = solver.eigenvectors().col(1).normalized();

  const double along = dir.dot(displacement);
  if (std::abs(along) <= 1e-12) return std::nullopt;
  if (along < 0.0) dir = -dir;
  return dir;
}

}  // namespace labelguide
