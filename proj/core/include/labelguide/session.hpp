#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "labelguide/interaction.hpp"
#include "labelguide/scene.hpp"

namespace labelguide {

inline constexpr int kProtocolVersion = 1;

struct SessionOptions {
  PipelineConfig pipeline;
  double tick_hz = 60.0;
  std::string id = "s0";
};

/// One protocol session. Client messages are JSON objects with a "type" of
/// hello, load_scene, start_trial, gaze, button, confirm or cancel. Every
/// message is answered by a snapshot or an error; pipeline events are sent
/// as they happen. Gaze timestamps drive the logical clock: the pipeline
/// ticks up to each sample's time with the previous gaze held.
class Session {
 public:
  explicit Session(SessionOptions options = {}, std::optional<Scene> scene = std::nullopt);

  /// Parses one line and returns the replies in order. Never throws for bad
  /// input; it becomes an error reply.
  std::vector<nlohmann::json> handle_line(std::string_view line);
  std::vector<nlohmann::json> handle(const nlohmann::json& message);

  nlohmann::json snapshot() const;
  const std::optional<Pipeline>& pipeline() const { return pipeline_; }
  /// Every pipeline event so far, as event-log records.
  const std::vector<nlohmann::json>& event_log() const { return log_; }

 private:
  std::vector<nlohmann::json> dispatch(const nlohmann::json& message);
  void tick_until(double t, std::vector<nlohmann::json>& out);
  void apply(const InputEvent& input, std::vector<nlohmann::json>& out);
  void emit(const std::vector<PipelineEvent>& events, std::vector<nlohmann::json>& out);
  nlohmann::json error(std::string_view code, std::string_view msg) const;

  SessionOptions options_;
  std::optional<Scene> scene_;
  std::optional<Pipeline> pipeline_;
  std::optional<ObjectId> target_;
  double last_gaze_t_ = -1.0;
  std::int64_t ticks_ = 0;
  double rotation_deg_ = 0.0;
  std::vector<nlohmann::json> log_;
};

/// Head direction from yaw (right of -z) and pitch (up), in degrees.
Vec3 direction_from_yaw_pitch(double yaw_deg, double pitch_deg);

}  // namespace labelguide
