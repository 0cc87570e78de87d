#include <algorithm>
#include <cmath>

#include "labelguide/layout.hpp"

namespace labelguide {

namespace {

std::vector<Label> sorted_copy(std::span<const Label> labels) {
  std::vector<Label> out(labels.begin(), labels.end());
  std::stable_sort(out.begin(), out.end(), label_less);
  return out;
}

}  // namespace

MultiCircleLayout build_single_sorted_circle(std::span<const Label> labels, ScreenVec center,
                                             const LayoutParams& params) {
  MultiCircleLayout mcl;
  mcl.center = center;
  if (labels.empty()) return mcl;

  auto sorted = sorted_copy(labels);
  const auto n = static_cast<double>(sorted.size());
  const double step = kTwoPi / n;

  // Candidate rotations put one label exactly on its initial radian.
  double best_theta = 0.0;
  double best_err = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    const double theta = wrap_angle(sorted[j].rad_p - step * static_cast<double>(j));
    double err = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      err += angular_distance(theta + step * static_cast<double>(i), sorted[i].rad_p);
    }
    if (err < best_err - 1e-12) {
      best_err = err;
      best_theta = theta;
    }
  }

  CircleLayout circle;
  circle.index = 0;
  circle.radius = params.circle_radius(0);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    Label l = std::move(sorted[i]);
    l.rad = wrap_angle(best_theta + step * static_cast<double>(i));
    l.circle_index = 0;
    circle.entries.push_back(std::move(l));
  }
  mcl.circles.push_back(std::move(circle));
  return mcl;
}

MultiCircleLayout build_strict_oriented(std::span<const Label> labels, ScreenVec center,
                                        const LayoutParams& params) {
  MultiCircleLayout mcl;
  mcl.center = center;
  for (auto& l : sorted_copy(labels)) {
    for (int k = 0;; ++k) {
      if (static_cast<std::size_t>(k) == mcl.circles.size()) {
        mcl.circles.push_back(CircleLayout{k, params.circle_radius(k), {}});
      }
      auto& entries = mcl.circles[static_cast<std::size_t>(k)].entries;
      const double gap = params.min_gap(k);
      const bool clear = std::none_of(entries.begin(), entries.end(), [&](const Label& other) {
        return angular_distance(other.rad, l.rad_p) < gap - 1e-12;
      });
      if (clear) {
        l.rad = wrap_angle(l.rad_p);
        l.circle_index = k;
        entries.push_back(l);
        break;
      }
    }
  }
  for (auto& c : mcl.circles) {
    std::stable_sort(c.entries.begin(), c.entries.end(),
                     [](const Label& a, const Label& b) { return a.rad < b.rad; });
  }
  return mcl;
}

MultiCircleLayout build_full_screen(std::span<const Label> labels, ScreenVec center,
                                    const LayoutParams& params) {
  MultiCircleLayout mcl;
  mcl.center = center;
  auto sorted = sorted_copy(labels);
  std::size_t next = 0;
  for (int k = 0; next < sorted.size(); ++k) {
    const auto cap = static_cast<std::size_t>(std::floor(kTwoPi / params.min_gap(k)));
    const std::size_t count = std::min(std::max<std::size_t>(cap, 1), sorted.size() - next);
    CircleLayout circle;
    circle.index = k;
    circle.radius = params.circle_radius(k);
    for (std::size_t i = 0; i < count; ++i) {
      Label l = std::move(sorted[next + i]);
      l.rad = kTwoPi * static_cast<double>(i) / static_cast<double>(count);
      l.circle_index = k;
      circle.entries.push_back(std::move(l));
    }
    next += count;
    mcl.circles.push_back(std::move(circle));
  }
  return mcl;
}

}  // namespace labelguide
