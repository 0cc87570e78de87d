#pragma once

#include <deque>
#include <numbers>
#include <optional>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "labelguide/error.hpp"

namespace labelguide {

using Vec3 = Eigen::Vector3d;

/// A point or direction on the screen. One unit is the radius of the
/// central-vision circle; +x is right, +y is up.
using ScreenVec = Eigen::Vector2d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Perspective model shared by every screen-space computation.
struct Projection {
  /// Half-angle of the central-vision cone; maps to one screen unit.
  double central_half_angle = deg_to_rad(15.0);
  /// Vertical half-angle of the visible display.
  double display_half_fov = deg_to_rad(50.0);
  /// Display width / height.
  double aspect = 1.0;

  static Projection from_central_fov_deg(double full_fov_deg);

  double half_height() const;
  double half_width() const { return aspect * half_height(); }
  double half_diagonal() const;
  bool on_screen(const ScreenVec& s) const;
};

struct ViewState {
  Vec3 viewpoint = Vec3::Zero();
  Vec3 view_dir = Vec3(0.0, 0.0, -1.0);
  Vec3 up = Vec3::UnitY();
  ScreenVec gaze = ScreenVec::Zero();

  Vec3 right() const { return view_dir.cross(up); }

  /// Orthonormal view looking along `dir` with roll removed against `world_up`.
  static ViewState looking(const Vec3& viewpoint, const Vec3& dir,
                           const Vec3& world_up = Vec3::UnitY());

  /// Unit-length and orthogonality checks at 1e-9.
  bool is_orthonormal() const;
};

Vec3 project_to_plane(const Vec3& v, const Vec3& normal);

/// Perspective projection. Throws ErrorCode::BehindView when p is not in
/// front of the viewpoint.
ScreenVec world_to_screen(const Vec3& p, const ViewState& view, const Projection& proj);

/// Like world_to_screen, but never fails: points behind the viewer or off the
/// display are pushed to the display border along their screen direction.
ScreenVec world_to_screen_clamped(const Vec3& p, const ViewState& view,
                                  const Projection& proj);

/// World-space unit ray through a screen point.
Vec3 screen_ray(const ScreenVec& s, const ViewState& view, const Projection& proj);

/// World point that projects to `s` at distance `depth` along the view axis.
Vec3 screen_to_world(const ScreenVec& s, const ViewState& view, const Projection& proj,
                     double depth);

double wrap_angle(double rad);

/// Counterclockwise angle from +x in [0, 2pi). Throws DegenerateVector for
/// |v| <= 1e-12.
double radian_of(const ScreenVec& v);

double angular_distance(double a, double b);

/// Angle between two 3D directions in radians; robust near 0 and pi.
double angle_between(const Vec3& a, const Vec3& b);

/// Unit vector rotated from `from` toward `to` by at most `max_angle`.
Vec3 rotate_toward(const Vec3& from, const Vec3& to, double max_angle);

struct GazeSamplePoint {
  double t = 0.0;
  ScreenVec point = ScreenVec::Zero();
};

/// Sliding window of recent gaze positions.
class GazeTrace {
 public:
  explicit GazeTrace(double window = 0.3);

  /// Appends a sample. Timestamps must be strictly increasing; samples older
  /// than latest - window are evicted.
  void push(double t, const ScreenVec& point);
  void clear() { samples_.clear(); }

  double window() const { return window_; }
  bool empty() const { return samples_.empty(); }
  const std::deque<GazeSamplePoint>& samples() const { return samples_; }

 private:
  double window_;
  std::deque<GazeSamplePoint> samples_;
};

/// Total-least-squares direction of gaze motion over the window, oriented
/// along the first-to-last displacement. Empty when that displacement is
/// shorter than `motion_threshold`, so fixation jitter yields no direction.
std::optional<ScreenVec> fit_gaze_direction(const GazeTrace& trace,
                                            double motion_threshold = 0.05);

}  // namespace labelguide
