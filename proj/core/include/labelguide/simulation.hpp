#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "labelguide/interaction.hpp"
#include "labelguide/scene.hpp"

namespace labelguide {

/// Scripted stand-in for a participant. Speeds may be infinite.
struct AgentConfig {
  double reaction_latency = 0.2;
  double max_gaze_speed = 3.0;   // screen units per second
  double max_head_speed = 120.0;  // degrees per second
  double noise_sigma = 0.01;      // screen units
  std::uint64_t seed = 0;

  static AgentConfig ideal() {
    const double inf = std::numeric_limits<double>::infinity();
    return AgentConfig{0.0, inf, inf, 0.0, 0};
  }
};

/// Follows the technique toward one target: presses the button, dwells on
/// the target's initial, moves its gaze to the target label, follows the
/// flight with head and eyes, and confirms once the label reaches the anchor.
class FollowerAgent {
 public:
  FollowerAgent(const AgentConfig& config, const Scene& scene, ObjectId target);

  /// Inputs for the coming tick, based on what the pipeline shows now.
  std::vector<InputEvent> step(const Pipeline& pipeline, double dt);

  const ViewState& view() const { return view_; }
  int retries() const { return retries_; }

 private:
  void move_head(const Vec3& toward, double dt, const Projection& proj);
  void move_gaze(const Vec3& goal, double dt, const Projection& proj);

  AgentConfig config_;
  ObjectId target_;
  std::string initial_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> noise_{0.0, 1.0};
  ViewState view_;
  Phase seen_phase_ = Phase::Idle;
  double phase_since_ = 0.0;
  bool acted_ = false;
  bool tracking_ = false;
  bool on_flight_ = false;
  std::optional<double> arrived_at_;
  int retries_ = 0;
};

struct TrialLimits {
  double tick_hz = 60.0;
  double max_seconds = 60.0;
};

struct TrialMetrics {
  std::int64_t ticks = 0;
  double time = 0.0;
  double rotation_deg = 0.0;
  bool success = false;
  std::size_t pruned_count = 0;
  std::size_t dropped_count = 0;
  std::size_t circle_count = 0;
  std::size_t candidate_count = 0;
  /// Seconds the target spent inside the central field of view.
  double fov_time = 0.0;
  int retries = 0;
};

/// Observer for every pipeline event of a trial.
using EventSink = std::function<void(const PipelineEvent&)>;

/// Closed-loop run of pipeline and agent at a fixed tick rate. Each tick the
/// agent acts, its inputs are applied, then the pipeline advances. CC1 is a
/// null baseline that always times out. Throws UnknownTarget.
TrialMetrics run_trial(const Scene& scene, ObjectId target, MethodCondition condition,
                       const AgentConfig& agent, const TrialLimits& limits = {},
                       PipelineConfig pipeline = {}, const EventSink& sink = {});

}  // namespace labelguide
