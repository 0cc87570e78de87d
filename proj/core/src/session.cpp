#include "labelguide/session.hpp"

#include <cmath>

#include "labelguide/export.hpp"

namespace labelguide {

Vec3 direction_from_yaw_pitch(double yaw_deg, double pitch_deg) {
  const double yaw = deg_to_rad(yaw_deg);
  const double pitch = deg_to_rad(pitch_deg);
  return Vec3(std::cos(pitch) * std::sin(yaw), std::sin(pitch), -std::cos(pitch) * std::cos(yaw));
}

Session::Session(SessionOptions options, std::optional<Scene> scene)
    : options_(std::move(options)), scene_(std::move(scene)) {
  if (!(options_.tick_hz > 0.0)) throw Error(ErrorCode::InvalidArgument, "tick rate must be positive");
}

nlohmann::json Session::error(std::string_view code, std::string_view msg) const {
  return {{"v", kProtocolVersion},
          {"type", "error"},
          {"session", options_.id},
          {"code", std::string(code)},
          {"msg", std::string(msg)}};
}

std::vector<nlohmann::json> Session::handle_line(std::string_view line) {
  nlohmann::json message;
  try {
    message = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    return {error("parse", e.what())};
  }
  return handle(message);
}

std::vector<nlohmann::json> Session::handle(const nlohmann::json& message) {
  if (!message.is_object() || !message.contains("type") || !message["type"].is_string()) {
    return {error("parse", "message must be an object with a string \"type\"")};
  }
  if (message.contains("v") && message["v"] != kProtocolVersion) {
    return {error("version", "unsupported protocol version")};
  }
  try {
    return dispatch(message);
  } catch (const nlohmann::json::exception& e) {
    return {error("invalid", e.what())};
  } catch (const Error& e) {
    return {error(to_string(e.code()), e.what())};
  }
}

void Session::emit(const std::vector<PipelineEvent>& events, std::vector<nlohmann::json>& out) {
  for (const auto& e : events) {
    log_.push_back(event_record(e, options_.id));
    out.push_back({{"v", kProtocolVersion},
                   {"type", "event"},
                   {"session", options_.id},
                   {"t", e.t},
                   {"kind", std::string(to_string(e.kind))},
                   {"payload", e.payload}});
  }
}

void Session::tick_until(double t, std::vector<nlohmann::json>& out) {
  const double dt = 1.0 / options_.tick_hz;
  while (static_cast<double>(ticks_ + 1) * dt <= t + 1e-9) {
    const Vec3 before = pipeline_->view().view_dir;
    emit(pipeline_->advance(dt), out);
    ++ticks_;
    rotation_deg_ += rad_to_deg(angle_between(before, pipeline_->view().view_dir));
    if (pipeline_->phase() == Phase::Guiding) out.push_back(snapshot());
  }
}

void Session::apply(const InputEvent& input, std::vector<nlohmann::json>& out) {
  const Vec3 before = pipeline_->view().view_dir;
  emit(pipeline_->apply(input), out);
  rotation_deg_ += rad_to_deg(angle_between(before, pipeline_->view().view_dir));
}

std::vector<nlohmann::json> Session::dispatch(const nlohmann::json& msg) {
  const std::string type = msg.at("type").get<std::string>();
  std::vector<nlohmann::json> out;

  if (type == "hello") {
    out.push_back({{"v", kProtocolVersion},
                   {"type", "hello"},
                   {"session", options_.id},
                   {"version", kProtocolVersion},
                   {"server", "labelguide"}});
    out.push_back(snapshot());
    return out;
  }

  if (type == "load_scene") {
    if (msg.contains("scene")) {
      scene_ = scene_from_json(msg.at("scene"));
    } else if (msg.contains("generate")) {
      const auto& g = msg.at("generate");
      SceneOptions opts;
      opts.seed = g.value("seed", std::uint64_t{0});
      opts.n_objects = g.value("n", std::size_t{90});
      opts.preset = parse_preset(g.value("preset", std::string("grid")));
      opts.skew = g.value("skew", 0.0);
      scene_ = generate_scene(opts);
    } else {
      return {error("invalid", "load_scene needs \"scene\" or \"generate\"")};
    }
    pipeline_.reset();
    target_.reset();
    out.push_back(snapshot());
    return out;
  }

  if (type == "start_trial") {
    if (!scene_) return {error("no_scene", "load a scene first")};
    PipelineConfig cfg = options_.pipeline;
    if (msg.contains("condition")) cfg.method = parse_method(msg.at("condition").get<std::string>());
    target_.reset();
    if (msg.contains("target_id") && !msg.at("target_id").is_null()) {
      const ObjectId target{msg.at("target_id").get<std::uint32_t>()};
      if (scene_->find(target) == nullptr) return {error("UnknownTarget", "no such object")};
      target_ = target;
    }
    pipeline_.emplace(scene_->objects, scene_->spawn, cfg);
    last_gaze_t_ = -1.0;
    ticks_ = 0;
    rotation_deg_ = 0.0;
    out.push_back(snapshot());
    return out;
  }

  const bool known = type == "gaze" || type == "button" || type == "confirm" || type == "cancel";
  if (!known) return {error("parse", "unknown message type '" + type + "'")};
  if (!pipeline_) return {error("no_trial", "start a trial first")};

  if (type == "gaze") {
    GazeSample g;
    g.t = msg.at("t").get<double>();
    g.point = ScreenVec(msg.at("x").get<double>(), msg.at("y").get<double>());
    if (!std::isfinite(g.t) || !g.point.allFinite()) return {error("invalid", "non-finite gaze")};
    if (g.t < last_gaze_t_) return {error("order", "gaze timestamps must not decrease")};
    if (msg.contains("yaw") || msg.contains("pitch")) {
      g.view_dir = direction_from_yaw_pitch(msg.value("yaw", 0.0), msg.value("pitch", 0.0));
    }
    last_gaze_t_ = g.t;
    tick_until(g.t, out);
    apply(g, out);
  } else if (type == "button") {
    apply(ButtonPress{msg.value("kind", std::string("start"))}, out);
  } else if (type == "confirm") {
    apply(Confirm{ObjectId{msg.at("object_id").get<std::uint32_t>()}}, out);
  } else {
    apply(Cancel{}, out);
  }
  out.push_back(snapshot());
  return out;
}

nlohmann::json Session::snapshot() const {
  nlohmann::json snap = {{"v", kProtocolVersion}, {"type", "snapshot"}, {"session", options_.id}};
  if (!pipeline_) {
    snap["t"] = 0.0;
    snap["phase"] = "idle";
    snap["trial"] = false;
    snap["objects"] = scene_ ? scene_->objects.size() : 0;
    return snap;
  }
  const Pipeline& p = *pipeline_;
  const Projection& proj = p.config().projection;
  snap["t"] = static_cast<double>(ticks_) / options_.tick_hz;
  snap["trial"] = true;
  snap["phase"] = std::string(to_string(p.phase()));
  snap["method"] = std::string(to_string(p.config().method));
  snap["target"] = target_ ? nlohmann::json(target_->value) : nlohmann::json(nullptr);
  snap["letter"] = p.selected_letter() ? nlohmann::json(*p.selected_letter()) : nlohmann::json(nullptr);
  snap["view"] = {{"view_dir", to_json(p.view().view_dir)},
                  {"up", to_json(p.view().up)},
                  {"gaze", to_json(p.view().gaze)}};
  snap["dwell"] = {{"accumulated", p.dwell().accumulated},
                   {"threshold", p.dwell().threshold},
                   {"region", p.dwell().target ? nlohmann::json(*p.dwell().target)
                                               : nlohmann::json(nullptr)}};
  snap["first_level"] = p.first_level() ? first_level_json(*p.first_level()) : nlohmann::json(nullptr);
  snap["layouts"] = p.second_level() ? layout_json(*p.second_level()) : nlohmann::json(nullptr);

  nlohmann::json flights = nlohmann::json::array();
  for (const auto& f : p.guidance().flights) {
    flights.push_back({{"id", f.label_id.value},
                       {"anchor", f.anchor.value},
                       {"pos2d", to_json(flight_screen_position(f, p.view(), proj))},
                       {"pos3d", to_json(f.position())},
                       {"t", f.t},
                       {"s", f.s},
                       {"arrived", f.arrived()}});
  }
  snap["flights"] = std::move(flights);
  snap["located"] = p.located() ? nlohmann::json(p.located()->value) : nlohmann::json(nullptr);
  snap["metrics"] = {{"ticks", ticks_},
                     {"time", static_cast<double>(ticks_) / options_.tick_hz},
                     {"rotation_deg", rotation_deg_}};
  return snap;
}

}  // namespace labelguide
