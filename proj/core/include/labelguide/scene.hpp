#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "labelguide/geometry.hpp"
#include "labelguide/objects.hpp"

namespace labelguide {

/// Bundled list of 500 lowercase tool and instrument names, sorted.
std::span<const std::string_view> word_list();

enum class ScenePreset { Grid, Scatter };

std::string_view to_string(ScenePreset p);
/// Throws InvalidArgument.
ScenePreset parse_preset(std::string_view text);

struct Scene {
  std::vector<SceneObject> objects;
  ViewState spawn;

  const SceneObject* find(ObjectId id) const;
};

struct SceneOptions {
  std::uint64_t seed = 0;
  std::size_t n_objects = 90;
  ScenePreset preset = ScenePreset::Grid;
  /// Probability that an object's name starts with one seed-chosen letter.
  double skew = 0.0;
  /// Forces the skewed letter instead of drawing it from the seed.
  std::optional<char> focus_letter;
};

/// Default spawn: standing eye height at the origin, looking down -z.
ViewState default_spawn();

/// Deterministic scene. Grid places objects on a lattice over a cylinder
/// patch in front of the viewer; scatter spreads them around the viewer.
/// Throws InvalidArgument for n_objects == 0.
Scene generate_scene(const SceneOptions& options);

nlohmann::json scene_to_json(const Scene& scene);
/// Throws Parse for malformed documents.
Scene scene_from_json(const nlohmann::json& doc);
/// Throws Parse when the file is missing or malformed.
Scene load_scene(const std::filesystem::path& path);
void save_scene(const Scene& scene, const std::filesystem::path& path);

}  // namespace labelguide
