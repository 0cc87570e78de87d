#include "labelguide/export.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace labelguide {

nlohmann::json to_json(const ScreenVec& v) { return {v.x(), v.y()}; }

nlohmann::json to_json(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

nlohmann::json first_level_json(const FirstLevelLayout& layout) {
  nlohmann::json letters = nlohmann::json::array();
  for (const auto& slot : layout.letters) {
    letters.push_back({{"letter", slot.letter},
                       {"radian", slot.radian},
                       {"position", to_json(slot.position)},
                       {"half_width", slot.region.half_width}});
  }
  return {{"radius", layout.radius}, {"letters", std::move(letters)}};
}

namespace {

nlohmann::json label_json(const Label& l, const ScreenVec& center, double radius) {
  nlohmann::json j = {{"id", l.id.value},
                      {"anchor", l.anchor.value},
                      {"text", l.text},
                      {"radian", l.rad},
                      {"initial_radian", l.rad_p},
                      {"distance", l.dis},
                      {"range", {l.ran.min, l.ran.max}}};
  if (l.circle_index) {
    j["circle_index"] = *l.circle_index;
    j["position"] = to_json(ScreenVec(center + radius * ScreenVec(std::cos(l.rad), std::sin(l.rad))));
  } else {
    j["circle_index"] = nullptr;
  }
  return j;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

nlohmann::json layout_json(const MultiCircleLayout& layout) {
  nlohmann::json circles = nlohmann::json::array();
  for (const auto& c : layout.circles) {
    nlohmann::json labels = nlohmann::json::array();
    for (const auto& l : c.entries) labels.push_back(label_json(l, layout.center, c.radius));
    circles.push_back({{"index", c.index}, {"radius", c.radius}, {"labels", std::move(labels)}});
  }
  nlohmann::json dropped = nlohmann::json::array();
  for (const auto& l : layout.dropped) dropped.push_back(label_json(l, layout.center, 0.0));
  return {{"v", 1},
          {"center", to_json(layout.center)},
          {"circles", std::move(circles)},
          {"dropped", std::move(dropped)},
          {"diagnostics", layout.diagnostics}};
}

std::string layout_svg(const MultiCircleLayout& layout, int size_px) {
  double extent = 1.0;
  for (const auto& c : layout.circles) extent = std::max(extent, c.radius);
  extent += 0.4;
  const double scale = size_px / (2.0 * extent);
  auto px = [&](const ScreenVec& p) {
    const ScreenVec d = p - layout.center;
    return std::pair{size_px / 2.0 + d.x() * scale, size_px / 2.0 - d.y() * scale};
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px << "\" height=\""
      << size_px << "\" viewBox=\"0 0 " << size_px << ' ' << size_px << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& c : layout.circles) {
    const double r = c.radius * scale;
    const double cx = size_px / 2.0;
    const double cy = size_px / 2.0;
    svg << "<path d=\"M " << num(cx + r) << ' ' << num(cy) << " A " << num(r) << ' ' << num(r)
        << " 0 1 0 " << num(cx - r) << ' ' << num(cy) << " A " << num(r) << ' ' << num(r)
        << " 0 1 0 " << num(cx + r) << ' ' << num(cy) << "\" fill=\"none\" stroke=\"#bbb\"/>\n";
    for (const auto& l : c.entries) {
      const auto [x, y] = px(layout.center + c.radius * ScreenVec(std::cos(l.rad), std::sin(l.rad)));
      svg << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\" fill=\"#c33\"/>\n";
      svg << "<text x=\"" << num(x + 4) << "\" y=\"" << num(y - 4)
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_xml(l.text)
          << "</text>\n";
    }
  }
  svg << "<circle cx=\"" << num(size_px / 2.0) << "\" cy=\"" << num(size_px / 2.0)
      << "\" r=\"4\" fill=\"#36c\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

nlohmann::json trajectory_json(const Trajectory& traj, int samples) {
  nlohmann::json control = nlohmann::json::array();
  for (const auto& p : traj.control) control.push_back(to_json(p));
  nlohmann::json polyline = nlohmann::json::array();
  for (const auto& p : sample_trajectory(traj, samples)) polyline.push_back(to_json(p));
  return {{"v", 1}, {"control", std::move(control)}, {"samples", std::move(polyline)}};
}

nlohmann::json event_record(const PipelineEvent& e, std::string_view session) {
  return {{"t", e.t},
          {"session", std::string(session)},
          {"event", std::string(to_string(e.kind))},
          {"payload", e.payload}};
}

}  // namespace labelguide
