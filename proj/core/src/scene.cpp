#include "labelguide/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <string>

namespace labelguide {

std::string_view to_string(ScenePreset p) {
  return p == ScenePreset::Grid ? "grid" : "scatter";
}

ScenePreset parse_preset(std::string_view text) {
  if (text == "grid") return ScenePreset::Grid;
  if (text == "scatter") return ScenePreset::Scatter;
  throw Error(ErrorCode::InvalidArgument, "unknown scene preset '" + std::string(text) + "'");
}

const SceneObject* Scene::find(ObjectId id) const {
  for (const auto& o : objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

ViewState default_spawn() {
  return ViewState::looking(Vec3(0.0, 1.6, 0.0), Vec3(0.0, 0.0, -1.0));
}

namespace {

class NamePicker {
 public:
  NamePicker() {
    for (auto w : word_list()) {
      if (by_letter_.empty() || by_letter_.back().front().front() != w.front()) {
        by_letter_.emplace_back();
      }
      by_letter_.back().push_back(w);
    }
  }

  std::size_t letters() const { return by_letter_.size(); }

  std::size_t index_of(char letter) const {
    for (std::size_t i = 0; i < by_letter_.size(); ++i) {
      if (by_letter_[i].front().front() == letter) return i;
    }
    throw Error(ErrorCode::InvalidArgument,
                std::string("no bundled words start with '") + letter + "'");
  }

  std::string pick(std::mt19937_64& rng, std::size_t focus, double skew) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> letter(0, by_letter_.size() - 1);
    const double u = unit(rng);
    const std::size_t any = letter(rng);
    const auto& group = by_letter_[u < skew ? focus : any];
    std::uniform_int_distribution<std::size_t> word(0, group.size() - 1);
    return std::string(group[word(rng)]);
  }

 private:
  std::vector<std::vector<std::string_view>> by_letter_;
};

std::vector<Vec3> grid_positions(std::size_t n, const Vec3& eye) {
  constexpr double kRadius = 2.5;
  const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(3.0 * static_cast<double>(n))));
  const std::size_t rows = (n + cols - 1) / cols;
  const double az_step =
      cols > 1 ? std::min(deg_to_rad(12.0), deg_to_rad(140.0) / static_cast<double>(cols - 1)) : 0.0;
  const double el_step =
      rows > 1 ? std::min(deg_to_rad(10.0), deg_to_rad(50.0) / static_cast<double>(rows - 1)) : 0.0;

  std::vector<Vec3> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = i / cols;
    const std::size_t c = i % cols;
    const std::size_t in_row = (r + 1 == rows) ? n - r * cols : cols;
    const double az = (static_cast<double>(c) - 0.5 * static_cast<double>(in_row - 1)) * az_step;
    const double el = (0.5 * static_cast<double>(rows - 1) - static_cast<double>(r)) * el_step;
    out.push_back(eye + Vec3(kRadius * std::sin(az), kRadius * std::tan(el), -kRadius * std::cos(az)));
  }
  return out;
}

std::vector<Vec3> scatter_positions(std::size_t n, const Vec3& eye, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> azimuth(0.0, kTwoPi);
  std::uniform_real_distribution<double> elevation(deg_to_rad(-25.0), deg_to_rad(25.0));
  std::uniform_real_distribution<double> distance(2.0, 5.0);
  std::vector<Vec3> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double az = azimuth(rng);
    const double el = elevation(rng);
    const double d = distance(rng);
    out.push_back(eye + d * Vec3(std::cos(el) * std::sin(az), std::sin(el),
                                 -std::cos(el) * std::cos(az)));
  }
  return out;
}

Vec3 vec_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::Parse, "expected [x, y, z]");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

nlohmann::json vec_to_json(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

}  // namespace

Scene generate_scene(const SceneOptions& options) {
  if (options.n_objects == 0) throw Error(ErrorCode::InvalidArgument, "scene needs objects");
  if (!(options.skew >= 0.0 && options.skew <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "skew must be in [0, 1]");
  }
  std::mt19937_64 rng(options.seed);
  static const NamePicker picker;

  std::size_t focus = 0;
  {
    std::uniform_int_distribution<std::size_t> letter(0, picker.letters() - 1);
    focus = letter(rng);
  }
  if (options.focus_letter) focus = picker.index_of(*options.focus_letter);

  Scene scene;
  scene.spawn = default_spawn();
  const auto positions = options.preset == ScenePreset::Grid
                             ? grid_positions(options.n_objects, scene.spawn.viewpoint)
                             : scatter_positions(options.n_objects, scene.spawn.viewpoint, rng);
  for (std::size_t i = 0; i < options.n_objects; ++i) {
    scene.objects.push_back(SceneObject{ObjectId{static_cast<std::uint32_t>(i + 1)},
                                        picker.pick(rng, focus, options.skew), positions[i]});
  }
  return scene;
}

nlohmann::json scene_to_json(const Scene& scene) {
  nlohmann::json objects = nlohmann::json::array();
  for (const auto& o : scene.objects) {
    objects.push_back({{"id", o.id.value}, {"name", o.name}, {"position", vec_to_json(o.position)}});
  }
  return {{"v", 1},
          {"objects", std::move(objects)},
          {"spawn",
           {{"viewpoint", vec_to_json(scene.spawn.viewpoint)},
            {"view_dir", vec_to_json(scene.spawn.view_dir)},
            {"up", vec_to_json(scene.spawn.up)}}}};
}

Scene scene_from_json(const nlohmann::json& doc) {
  try {
    Scene scene;
    scene.spawn = default_spawn();
    if (doc.contains("spawn")) {
      const auto& s = doc.at("spawn");
      const Vec3 viewpoint = vec_from_json(s.at("viewpoint"));
      const Vec3 dir = vec_from_json(s.at("view_dir"));
      const Vec3 up = s.contains("up") ? vec_from_json(s.at("up")) : Vec3::UnitY();
      if (dir.norm() <= 1e-12) throw Error(ErrorCode::Parse, "spawn view_dir is zero");
      scene.spawn = ViewState::looking(viewpoint, dir, up);
    }
    for (const auto& o : doc.at("objects")) {
      SceneObject obj{ObjectId{o.at("id").get<std::uint32_t>()}, o.at("name").get<std::string>(),
                      vec_from_json(o.at("position"))};
      if (obj.name.empty()) throw Error(ErrorCode::Parse, "object names must be non-empty");
      if (scene.find(obj.id) != nullptr) {
        throw Error(ErrorCode::Parse, "duplicate object id " + std::to_string(obj.id.value));
      }
      scene.objects.push_back(std::move(obj));
    }
    if (scene.objects.empty()) throw Error(ErrorCode::Parse, "scene has no objects");
    return scene;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed scene: ") + e.what());
  }
}

Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open scene file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed scene: ") + e.what());
  }
  return scene_from_json(doc);
}

void save_scene(const Scene& scene, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << scene_to_json(scene).dump(2) << '\n';
}

}  // namespace labelguide
