#pragma once

#include <deque>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "labelguide/guidance.hpp"
#include "labelguide/layout.hpp"
#include "labelguide/method.hpp"

namespace labelguide {

enum class Phase { Idle, FirstLevel, SecondLevel, Guiding, Located };

std::string_view to_string(Phase p);

struct ButtonPress {
  std::string kind = "start";
};

/// One gaze sample. `view_dir`, when present, also moves the head.
struct GazeSample {
  double t = 0.0;
  ScreenVec point = ScreenVec::Zero();
  std::optional<Vec3> view_dir;
};

struct Confirm {
  ObjectId object;
};

struct Cancel {};

using InputEvent = std::variant<ButtonPress, GazeSample, Confirm, Cancel>;

enum class EventKind {
  LetterSelected,
  CandidatesChosen,
  LabelSelected,
  LabelPruned,
  FlightArrived,
  FlightExpired,
  GuidanceExhausted,
  TargetLocated,
  Cancelled,
  InvalidTransition,
};

std::string_view to_string(EventKind k);

struct PipelineEvent {
  double t = 0.0;
  EventKind kind = EventKind::InvalidTransition;
  nlohmann::json payload = nlohmann::json::object();
};

struct DwellState {
  std::optional<std::size_t> target;
  double accumulated = 0.0;
  double threshold = 0.4;
  bool fired = false;
};

/// Accumulates dwell time on the region under `gaze`. Returns the region
/// index on the single tick where the threshold is reached. Throws
/// InvalidArgument for dt <= 0.
std::optional<std::size_t> dwell_update(DwellState& d, const ScreenVec& gaze,
                                        std::span<const AnnularSector> regions, double dt);

struct PipelineConfig {
  MethodCondition method = MethodCondition::EC3;
  Projection projection;
  LayoutParams layout;
  GuidanceParams guidance;
  double dwell_seconds = 0.4;
  double gaze_window = 0.3;
  double motion_threshold = 0.05;
  /// During guidance, gaze faster than this (deg/s) is a saccade and the
  /// direction fit restarts after it.
  double saccade_speed = 150.0;
  /// Minimum gaze offset from the layout center before candidates are chosen.
  double trigger_distance = 0.15;
  /// Distance along the view axis at which layout labels sit in the world.
  double label_depth = 2.0;
};

/// Hit area for dwelling on a placed second-level label.
AnnularSector label_region(const MultiCircleLayout& layout, const CircleLayout& circle,
                           const Label& label, const LayoutParams& params);

/// The locating pipeline for one session: letter ring, second-level layout,
/// candidate selection and guided flights.
class Pipeline {
 public:
  Pipeline(std::vector<SceneObject> objects, const ViewState& spawn, PipelineConfig config = {});

  std::vector<PipelineEvent> apply(const InputEvent& event);
  /// Advances the logical clock by one tick. Throws InvalidArgument for dt <= 0.
  std::vector<PipelineEvent> advance(double dt);

  Phase phase() const { return phase_; }
  double time() const { return now_; }
  const PipelineConfig& config() const { return config_; }
  std::span<const SceneObject> objects() const { return objects_; }
  const SceneObject* find_object(ObjectId id) const;

  /// Current head pose and gaze.
  const ViewState& view() const { return view_; }
  /// Head pose captured at the button press; layouts are fixed to it.
  const ViewState& layout_view() const { return layout_view_; }

  const std::optional<FirstLevelLayout>& first_level() const { return first_level_; }
  const std::optional<MultiCircleLayout>& second_level() const { return second_level_; }
  const std::optional<std::string>& selected_letter() const { return letter_; }
  const GuidanceState& guidance() const { return guidance_; }
  const DwellState& dwell() const { return dwell_; }
  std::optional<ObjectId> located() const { return located_; }

  /// World position of a layout-plane screen point.
  Vec3 layout_to_world(const ScreenVec& s) const;
  /// Gaze point expressed in the layout view's screen coordinates.
  std::optional<ScreenVec> gaze_in_layout() const;

 private:
  struct GazeRecord {
    double t;
    Vec3 dir;
  };

  std::vector<PipelineEvent> enter_second_level(const std::string& letter);
  std::vector<PipelineEvent> start_guidance(const std::vector<Label>& labels, EventKind kind);
  GazeTrace trace_in(const ViewState& view) const;
  void reset(Phase phase);
  PipelineEvent event(EventKind kind, nlohmann::json payload = nlohmann::json::object()) const;
  PipelineEvent invalid(std::string_view what) const;

  std::vector<SceneObject> objects_;
  std::vector<Label> labels_;
  PipelineConfig config_;
  Phase phase_ = Phase::Idle;
  double now_ = 0.0;
  ViewState view_;
  ViewState layout_view_;
  std::deque<GazeRecord> history_;
  std::optional<FirstLevelLayout> first_level_;
  std::optional<MultiCircleLayout> second_level_;
  std::vector<AnnularSector> regions_;
  std::vector<LabelId> region_labels_;
  std::optional<std::string> letter_;
  DwellState dwell_;
  GuidanceState guidance_;
  std::optional<ObjectId> located_;
};

}  // namespace labelguide
