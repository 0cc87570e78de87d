#include "labelguide/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace labelguide {

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::Idle: return "idle";
    case Phase::FirstLevel: return "first_level";
    case Phase::SecondLevel: return "second_level";
    case Phase::Guiding: return "guiding";
    case Phase::Located: return "located";
  }
  return "unknown";
}

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::LetterSelected: return "LetterSelected";
    case EventKind::CandidatesChosen: return "CandidatesChosen";
    case EventKind::LabelSelected: return "LabelSelected";
    case EventKind::LabelPruned: return "LabelPruned";
    case EventKind::FlightArrived: return "FlightArrived";
    case EventKind::FlightExpired: return "FlightExpired";
    case EventKind::GuidanceExhausted: return "GuidanceExhausted";
    case EventKind::TargetLocated: return "TargetLocated";
    case EventKind::Cancelled: return "Cancelled";
    case EventKind::InvalidTransition: return "InvalidTransition";
  }
  return "Unknown";
}

std::optional<std::size_t> dwell_update(DwellState& d, const ScreenVec& gaze,
                                        std::span<const AnnularSector> regions, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dwell update needs dt > 0");
  std::optional<std::size_t> inside;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (regions[i].contains(gaze)) {
      inside = i;
      break;
    }
  }
  if (!inside) {
    d.target.reset();
    d.accumulated = 0.0;
    return std::nullopt;
  }
  if (d.target == inside) {
    d.accumulated = std::min(d.threshold, d.accumulated + dt);
  } else {
    d.target = inside;
    d.accumulated = std::min(d.threshold, dt);
  }
  if (!d.fired && d.accumulated >= d.threshold - 1e-9) {
    d.fired = true;
    return inside;
  }
  return std::nullopt;
}

AnnularSector label_region(const MultiCircleLayout& layout, const CircleLayout& circle,
                           const Label& label, const LayoutParams& params) {
  const double half_band = params.radius_step / 2.0;
  return AnnularSector{layout.center, label.rad, params.min_gap(circle.index) / 2.0,
                       circle.radius - half_band, circle.radius + half_band};
}

Pipeline::Pipeline(std::vector<SceneObject> objects, const ViewState& spawn, PipelineConfig config)
    : objects_(std::move(objects)), config_(std::move(config)), view_(spawn), layout_view_(spawn) {
  labels_ = make_labels(objects_);
  dwell_.threshold = config_.dwell_seconds;
}

const SceneObject* Pipeline::find_object(ObjectId id) const {
  for (const auto& o : objects_) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

Vec3 Pipeline::layout_to_world(const ScreenVec& s) const {
  return screen_to_world(s, layout_view_, config_.projection, config_.label_depth);
}

std::optional<ScreenVec> Pipeline::gaze_in_layout() const {
  const Vec3 dir = screen_ray(view_.gaze, view_, config_.projection);
  if (dir.dot(layout_view_.view_dir) <= 1e-9) return std::nullopt;
  return world_to_screen(layout_view_.viewpoint + dir, layout_view_, config_.projection);
}

GazeTrace Pipeline::trace_in(const ViewState& view) const {
  GazeTrace trace(config_.gaze_window);
  for (const auto& rec : history_) {
    if (rec.dir.dot(view.view_dir) <= 1e-9) continue;
    trace.push(rec.t, world_to_screen(view.viewpoint + rec.dir, view, config_.projection));
  }
  return trace;
}

PipelineEvent Pipeline::event(EventKind kind, nlohmann::json payload) const {
  return PipelineEvent{now_, kind, std::move(payload)};
}

PipelineEvent Pipeline::invalid(std::string_view what) const {
  return event(EventKind::InvalidTransition,
               {{"phase", std::string(to_string(phase_))}, {"input", std::string(what)}});
}

void Pipeline::reset(Phase phase) {
  phase_ = phase;
  first_level_.reset();
  second_level_.reset();
  regions_.clear();
  region_labels_.clear();
  letter_.reset();
  dwell_ = DwellState{};
  dwell_.threshold = config_.dwell_seconds;
  guidance_ = GuidanceState{};
  located_.reset();
}

std::vector<PipelineEvent> Pipeline::apply(const InputEvent& input) {
  std::vector<PipelineEvent> out;
  if (const auto* gaze = std::get_if<GazeSample>(&input)) {
    if (gaze->view_dir) {
      ViewState next = ViewState::looking(view_.viewpoint, *gaze->view_dir);
      next.gaze = view_.gaze;
      view_ = next;
    }
    view_.gaze = gaze->point;
    const Vec3 dir = screen_ray(view_.gaze, view_, config_.projection);
    if (!history_.empty() && gaze->t <= history_.back().t) {
      history_.back().dir = dir;
    } else {
      if (!history_.empty()) {
        const double speed =
            rad_to_deg(angle_between(history_.back().dir, dir)) / (gaze->t - history_.back().t);
        if (phase_ == Phase::Guiding && speed > config_.saccade_speed) history_.clear();
      }
      history_.push_back({gaze->t, dir});
    }
    while (history_.front().t < history_.back().t - config_.gaze_window) history_.pop_front();
    return out;
  }

  if (std::holds_alternative<Cancel>(input)) {
    reset(Phase::Idle);
    out.push_back(event(EventKind::Cancelled));
    return out;
  }

  if (std::holds_alternative<ButtonPress>(input)) {
    if (phase_ != Phase::Idle || config_.method == MethodCondition::CC1) {
      out.push_back(invalid("button"));
      return out;
    }
    reset(Phase::Idle);
    layout_view_ = view_;
    layout_view_.gaze = ScreenVec::Zero();
    if (uses_first_level(config_.method)) {
      if (labels_.empty()) {
        out.push_back(invalid("button"));
        return out;
      }
      first_level_ = build_first_level(labels_);
      for (const auto& slot : first_level_->letters) regions_.push_back(slot.region);
      phase_ = Phase::FirstLevel;
    } else {
      auto entered = enter_second_level("");
      out.insert(out.end(), entered.begin(), entered.end());
    }
    return out;
  }

  const auto& confirm = std::get<Confirm>(input);
  if (phase_ != Phase::Guiding) {
    out.push_back(invalid("confirm"));
    return out;
  }
  const FlightState* flight = guidance_.find_anchor(confirm.object);
  if (flight == nullptr) {
    out.push_back(invalid("confirm"));
    return out;
  }
  guidance_.target_reached = flight->label_id;
  located_ = confirm.object;
  phase_ = Phase::Located;
  out.push_back(event(EventKind::TargetLocated,
                      {{"object", confirm.object.value}, {"label", flight->label_id.value}}));
  return out;
}

std::vector<PipelineEvent> Pipeline::enter_second_level(const std::string& letter) {
  std::vector<PipelineEvent> out;
  ViewState lv = layout_view_;
  std::vector<Label> labels;
  if (uses_first_level(config_.method)) {
    const LetterSlot* slot = first_level_ ? first_level_->find(letter) : nullptr;
    if (slot != nullptr) lv.gaze = slot->position;
    labels = labels_with_initial(labels_, letter);
    letter_ = letter;
  } else {
    labels = labels_;
  }
  second_level_ =
      layout_for(config_.method, labels, objects_, lv, config_.projection, config_.layout);
  regions_.clear();
  region_labels_.clear();
  if (!uses_gaze_direction(config_.method)) {
    for (const auto& circle : second_level_->circles) {
      for (const auto& l : circle.entries) {
        regions_.push_back(label_region(*second_level_, circle, l, config_.layout));
        region_labels_.push_back(l.id);
      }
    }
  }
  dwell_ = DwellState{};
  dwell_.threshold = config_.dwell_seconds;
  phase_ = Phase::SecondLevel;
  return out;
}

std::vector<PipelineEvent> Pipeline::start_guidance(const std::vector<Label>& labels,
                                                    EventKind kind) {
  std::vector<PipelineEvent> out;
  GuidanceState state;
  nlohmann::json ids = nlohmann::json::array();
  for (const auto& l : labels) {
    const auto pos = second_level_->position_of(l.id);
    const SceneObject* anchor = find_object(l.anchor);
    if (!pos || anchor == nullptr) continue;
    try {
      state.flights.push_back(start_flight(l.id, l.anchor, layout_to_world(*pos), anchor->position,
                                           layout_view_.viewpoint, config_.guidance));
      ids.push_back(l.id.value);
    } catch (const Error&) {
      // Label already sits on its anchor; nothing to fly.
    }
  }
  if (state.flights.empty()) return out;
  state.last_gaze_dir = fit_gaze_direction(trace_in(layout_view_), config_.motion_threshold);
  // Pruning only looks at gaze recorded while the labels fly.
  if (history_.size() > 1) history_.erase(history_.begin(), history_.end() - 1);
  guidance_ = std::move(state);
  phase_ = Phase::Guiding;
  nlohmann::json payload = {{"count", ids.size()}, {"labels", ids}};
  if (kind == EventKind::LabelSelected) payload["label"] = ids.front();
  out.push_back(event(kind, std::move(payload)));
  return out;
}

std::vector<PipelineEvent> Pipeline::advance(double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "tick needs dt > 0");
  now_ += dt;
  std::vector<PipelineEvent> out;
  const ScreenVec far_away(std::numeric_limits<double>::max(), 0.0);

  switch (phase_) {
    case Phase::Idle:
    case Phase::Located:
      break;

    case Phase::FirstLevel: {
      const auto g = gaze_in_layout();
      const auto hit = dwell_update(dwell_, g.value_or(far_away), regions_, dt);
      if (hit) {
        const std::string letter = first_level_->letters[*hit].letter;
        out.push_back(event(EventKind::LetterSelected, {{"letter", letter}}));
        auto entered = enter_second_level(letter);
        out.insert(out.end(), entered.begin(), entered.end());
      }
      break;
    }

    case Phase::SecondLevel: {
      const auto g = gaze_in_layout();
      if (uses_gaze_direction(config_.method)) {
        const auto dir = fit_gaze_direction(trace_in(layout_view_), config_.motion_threshold);
        if (dir && g && (*g - second_level_->center).norm() >= config_.trigger_distance) {
          const auto candidates = select_candidates(*second_level_, *dir);
          if (!candidates.empty()) {
            auto started = start_guidance(candidates, EventKind::CandidatesChosen);
            out.insert(out.end(), started.begin(), started.end());
          }
        }
      } else {
        const auto hit = dwell_update(dwell_, g.value_or(far_away), regions_, dt);
        if (hit) {
          const Label* label = second_level_->find(region_labels_[*hit]);
          auto started = start_guidance({*label}, EventKind::LabelSelected);
          out.insert(out.end(), started.begin(), started.end());
        }
      }
      break;
    }

    case Phase::Guiding: {
      const auto step = step_guidance(guidance_, view_, config_.projection, trace_in(view_), dt,
                                      config_.guidance, config_.motion_threshold);
      for (auto id : step.pruned) out.push_back(event(EventKind::LabelPruned, {{"label", id.value}}));
      for (auto id : step.arrived) {
        out.push_back(event(EventKind::FlightArrived, {{"label", id.value}}));
      }
      for (auto id : step.expired) {
        out.push_back(event(EventKind::FlightExpired, {{"label", id.value}}));
      }
      if (guidance_.flights.empty()) {
        out.push_back(event(EventKind::GuidanceExhausted));
        reset(Phase::Idle);
      }
      break;
    }
  }
  return out;
}

}  // namespace labelguide
