#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "labelguide/geometry.hpp"

namespace labelguide {

struct ObjectId {
  std::uint32_t value = 0;
  auto operator<=>(const ObjectId&) const = default;
};

struct LabelId {
  std::uint32_t value = 0;
  auto operator<=>(const LabelId&) const = default;
};

struct SceneObject {
  ObjectId id;
  std::string name;
  Vec3 position = Vec3::Zero();
};

}  // namespace labelguide
