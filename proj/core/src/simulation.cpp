#include "labelguide/simulation.hpp"

#include <cmath>

namespace labelguide {

FollowerAgent::FollowerAgent(const AgentConfig& config, const Scene& scene, ObjectId target)
    : config_(config), target_(target), rng_(config.seed), view_(scene.spawn) {
  const SceneObject* obj = scene.find(target);
  if (obj == nullptr) {
    throw Error(ErrorCode::UnknownTarget, "unknown target " + std::to_string(target.value));
  }
  initial_ = initial_of(obj->name);
  view_.gaze = ScreenVec::Zero();
}

void FollowerAgent::move_head(const Vec3& toward, double dt, const Projection& proj) {
  const Vec3 gaze_world = screen_ray(view_.gaze, view_, proj);
  const Vec3 dir = (toward - view_.viewpoint).normalized();
  const double step = deg_to_rad(config_.max_head_speed) * dt;
  ViewState next = ViewState::looking(view_.viewpoint, rotate_toward(view_.view_dir, dir, step));
  // Eyes hold their world direction while the head turns.
  next.gaze = world_to_screen_clamped(view_.viewpoint + gaze_world, next, proj);
  view_ = next;
}

void FollowerAgent::move_gaze(const Vec3& goal, double dt, const Projection& proj) {
  const ScreenVec target = world_to_screen_clamped(goal, view_, proj);
  const ScreenVec delta = target - view_.gaze;
  const double reach = config_.max_gaze_speed * dt;
  if (delta.norm() <= reach) {
    view_.gaze = target;
  } else if (reach > 0.0) {
    view_.gaze += delta.normalized() * reach;
  }
}

std::vector<InputEvent> FollowerAgent::step(const Pipeline& pipeline, double dt) {
  std::vector<InputEvent> out;
  const double now = pipeline.time();
  const Projection& proj = pipeline.config().projection;
  const Phase phase = pipeline.phase();
  if (phase != seen_phase_) {
    seen_phase_ = phase;
    phase_since_ = now;
    acted_ = false;
    tracking_ = false;
    on_flight_ = false;
    arrived_at_.reset();
  }
  const bool ready = now - phase_since_ >= config_.reaction_latency - 1e-12;
  std::optional<InputEvent> action;

  switch (phase) {
    case Phase::Idle:
      if (ready && !acted_) {
        action = ButtonPress{};
        acted_ = true;
      }
      break;

    case Phase::FirstLevel: {
      const LetterSlot* slot = pipeline.first_level()->find(initial_);
      if (ready && slot != nullptr) move_gaze(pipeline.layout_to_world(slot->position), dt, proj);
      break;
    }

    case Phase::SecondLevel: {
      const auto pos = pipeline.second_level()->position_of(LabelId{target_.value});
      if (!ready) break;
      if (pos) {
        move_gaze(pipeline.layout_to_world(*pos), dt, proj);
      } else if (!acted_) {
        action = Cancel{};
        acted_ = true;
        ++retries_;
      }
      break;
    }

    case Phase::Guiding: {
      const FlightState* flight = pipeline.guidance().find_anchor(target_);
      if (flight == nullptr) {
        if (ready && !acted_) {
          action = Cancel{};
          acted_ = true;
          ++retries_;
        }
        break;
      }
      if (!ready) break;
      const Vec3 pos = flight->position();
      if (!on_flight_) {
        // Saccade onto the label, then pursue it.
        view_.gaze = world_to_screen_clamped(pos, view_, proj);
        on_flight_ = true;
      }
      const Vec3 rel = pos - view_.viewpoint;
      if (rel.dot(view_.view_dir) <= 0.0 || world_to_screen(pos, view_, proj).norm() > 1.0) {
        tracking_ = true;
      }
      if (tracking_) move_head(pos, dt, proj);
      move_gaze(pos, dt, proj);
      if (flight->arrived()) {
        if (!arrived_at_) arrived_at_ = now;
        if (now - *arrived_at_ >= config_.reaction_latency - 1e-12 && !acted_) {
          action = Confirm{target_};
          acted_ = true;
        }
      }
      break;
    }

    case Phase::Located:
      break;
  }

  ScreenVec sample = view_.gaze;
  const double nx = noise_(rng_);
  const double ny = noise_(rng_);
  sample += config_.noise_sigma * ScreenVec(nx, ny);
  out.push_back(GazeSample{now, sample, view_.view_dir});
  if (action) out.push_back(*action);
  return out;
}

TrialMetrics run_trial(const Scene& scene, ObjectId target, MethodCondition condition,
                       const AgentConfig& agent, const TrialLimits& limits, PipelineConfig pipeline,
                       const EventSink& sink) {
  const SceneObject* target_obj = scene.find(target);
  if (target_obj == nullptr) {
    throw Error(ErrorCode::UnknownTarget, "unknown target " + std::to_string(target.value));
  }
  if (!(limits.tick_hz > 0.0 && limits.max_seconds > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tick rate and timeout must be positive");
  }
  const double dt = 1.0 / limits.tick_hz;
  const auto max_ticks = static_cast<std::int64_t>(std::llround(limits.max_seconds * limits.tick_hz));

  TrialMetrics m;
  if (condition == MethodCondition::CC1) {
    m.ticks = max_ticks;
    m.time = static_cast<double>(max_ticks) * dt;
    return m;
  }

  pipeline.method = condition;
  Pipeline p(scene.objects, scene.spawn, pipeline);
  FollowerAgent follower(agent, scene, target);
  const Projection& proj = p.config().projection;

  auto record = [&](const std::vector<PipelineEvent>& events) {
    for (const auto& e : events) {
      if (e.kind == EventKind::LabelPruned) ++m.pruned_count;
      if (e.kind == EventKind::CandidatesChosen || e.kind == EventKind::LabelSelected) {
        m.candidate_count = e.payload.at("count").get<std::size_t>();
      }
      if (sink) sink(e);
    }
  };

  Vec3 last_dir = p.view().view_dir;
  while (m.ticks < max_ticks) {
    for (const auto& input : follower.step(p, dt)) record(p.apply(input));
    record(p.advance(dt));
    ++m.ticks;

    const Vec3 dir = p.view().view_dir;
    m.rotation_deg += rad_to_deg(angle_between(last_dir, dir));
    last_dir = dir;

    const Vec3 rel = target_obj->position - p.view().viewpoint;
    if (rel.dot(dir) > 1e-9 && world_to_screen(target_obj->position, p.view(), proj).norm() <= 1.0) {
      m.fov_time += dt;
    }
    if (p.second_level()) {
      m.circle_count = p.second_level()->circles.size();
      m.dropped_count = p.second_level()->dropped.size();
    }
    if (p.phase() == Phase::Located) {
      m.success = p.located() == target;
      break;
    }
  }
  m.time = static_cast<double>(m.ticks) * dt;
  m.retries = follower.retries();
  return m;
}

}  // namespace labelguide
