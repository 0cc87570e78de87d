#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "labelguide/geometry.hpp"
#include "labelguide/objects.hpp"

namespace labelguide {

/// Admissible radians for a label, stored unwrapped around the label's
/// initial radian.
struct RadianRange {
  double min = 0.0;
  double max = 0.0;

  static RadianRange centered(double center, double width) {
    return {center - width / 2.0, center + width / 2.0};
  }
  double width() const { return max - min; }
  double center() const { return 0.5 * (min + max); }
  /// Wraparound-aware membership.
  bool contains(double rad, double tol = 1e-9) const;
};

/// Sliding-range width for a label at screen distance `dis` from the gaze:
/// (1 - e^-dis) * pi / 4.
double range_width(double dis);

/// Screen distance assigned to anchors that cannot be projected (behind the
/// viewer). Large enough that range_width is within 1e-12 of pi/4.
inline constexpr double kMaxLabelDistance = 30.0;

struct Label {
  LabelId id;
  ObjectId anchor;
  std::string text;
  double dis = 0.0;
  double rad = 0.0;    // current radian in [0, 2pi)
  double rad_p = 0.0;  // initial radian, fixed after init_label_attrs
  RadianRange ran;
  std::optional<int> circle_index;
};

/// Case-insensitive code-point collation key.
std::string collation_key(std::string_view text);

/// First code point of `text`, ASCII-lowercased.
std::string initial_of(std::string_view text);

/// Alphabetical order with ties broken by label id.
bool label_less(const Label& a, const Label& b);

/// One label per scene object; label id mirrors the object id.
std::vector<Label> make_labels(std::span<const SceneObject> objects);

/// Labels whose text starts with `letter` (case-insensitive).
std::vector<Label> labels_with_initial(std::span<const Label> labels, std::string_view letter);

struct LayoutParams {
  int max_circles = 6;
  int relax_iters = 60;
  double base_radius = 1.0;
  double radius_step = 0.22;
  double label_width = 0.12;
  double separation_margin = 0.10;

  double circle_radius(int k) const { return base_radius + radius_step * k; }
  /// Angle subtended by one label on circle k.
  double label_extent(int k) const;
  /// Minimum center-to-center separation on circle k: extent plus margin.
  double min_gap(int k) const { return label_extent(k) * (1.0 + separation_margin); }
};

struct CircleLayout {
  int index = 0;
  double radius = 1.0;
  /// Entries in counterclockwise order starting after the circle's cut.
  std::vector<Label> entries;
};

/// Unwrapped radians of a circle's entries: the first entry keeps its radian
/// and each following entry adds its counterclockwise gap.
std::vector<double> unwrapped_positions(const CircleLayout& circle);

struct MultiCircleLayout {
  std::vector<CircleLayout> circles;
  ScreenVec center = ScreenVec::Zero();
  std::vector<Label> dropped;
  std::vector<std::string> diagnostics;

  std::size_t placed_count() const;
  const Label* find(LabelId id) const;
  /// Screen position of a placed label; empty when the label is not placed.
  std::optional<ScreenVec> position_of(LabelId id) const;
  std::vector<Label> placed() const;
};

/// Hit area used for dwell selection.
struct AnnularSector {
  ScreenVec center = ScreenVec::Zero();
  double radian = 0.0;
  double half_width = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;

  bool contains(const ScreenVec& p) const;
};

struct LetterSlot {
  std::string letter;
  double radian = 0.0;
  ScreenVec position = ScreenVec::Zero();
  AnnularSector region;
};

struct FirstLevelLayout {
  std::vector<LetterSlot> letters;
  double radius = 1.0;

  const LetterSlot* find(std::string_view letter) const;
};

/// Ring of distinct initial letters, counterclockwise from three o'clock.
/// Throws EmptyLabelSet.
FirstLevelLayout build_first_level(std::span<const Label> labels);

/// Computes dis, rad, rad_p and ran for each label relative to view.gaze.
/// Anchors behind the viewer keep their lateral direction and get
/// kMaxLabelDistance; a diagnostic is appended when `diagnostics` is given.
/// Throws UnresolvedAnchor.
std::vector<Label> init_label_attrs(std::span<const Label> labels,
                                    std::span<const SceneObject> objects,
                                    const ViewState& view, const Projection& proj,
                                    std::vector<std::string>* diagnostics = nullptr);

/// Indices of a longest subsequence that is strictly increasing under
/// label_less, for a fixed linear order.
std::vector<std::size_t> longest_sorted_run(std::span<const Label* const> seq);

struct SortedSplit {
  std::vector<Label> seed;  // alphabetical, rad = rad_p
  std::vector<Label> rest;  // input order preserved
};

/// Largest subset that is both alphabetical and counterclockwise by rad_p,
/// over every circular cut between consecutive rad_p values. Ties go to the
/// smallest cut radian.
SortedSplit max_sorted_subseq(std::span<const Label> scl);

/// Tries to place `label` between its alphabetical neighbours. On success the
/// label is added to `circle`, removed from `scl` (matched by id), and true is
/// returned; otherwise both are left untouched.
bool insert_label(CircleLayout& circle, std::vector<Label>& scl, const Label& label,
                  const LayoutParams& params);

/// Separates overlapping neighbours on circle `k`. After `n_it` passes the
/// most-overlapped label is removed each pass until no overlap remains.
/// Returns the removed labels.
std::vector<Label> relax(CircleLayout& circle, int k, int n_it, const LayoutParams& params);

/// Full sorted-and-orientated second-level layout centered on view.gaze.
MultiCircleLayout build_second_level(std::span<const Label> labels,
                                     std::span<const SceneObject> objects,
                                     const ViewState& view, const Projection& proj,
                                     const LayoutParams& params);

// Baseline second-level layouts. All expect labels from init_label_attrs.

/// One circle, alphabetical, evenly spaced, rotated to minimise the mean
/// angular error to rad_p.
MultiCircleLayout build_single_sorted_circle(std::span<const Label> labels, ScreenVec center,
                                             const LayoutParams& params);

/// Every label pinned at rad_p on the innermost circle with room for it;
/// as many circles as needed.
MultiCircleLayout build_strict_oriented(std::span<const Label> labels, ScreenVec center,
                                        const LayoutParams& params);

/// All labels, alphabetical, evenly spaced over as many circles as needed.
MultiCircleLayout build_full_screen(std::span<const Label> labels, ScreenVec center,
                                    const LayoutParams& params);

}  // namespace labelguide
