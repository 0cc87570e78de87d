#include "labelguide/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace labelguide {

bool RadianRange::contains(double rad, double tol) const {
  const double w = width();
  if (w >= kTwoPi) return true;
  const double x = wrap_angle(rad - min);
  return x <= w + tol || x >= kTwoPi - tol;
}

double range_width(double dis) { return (1.0 - std::exp(-dis)) * kPi / 4.0; }

std::string collation_key(std::string_view text) {
  std::string key(text);
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
  });
  return key;
}

std::string initial_of(std::string_view text) {
  if (text.empty()) return {};
  const auto lead = static_cast<unsigned char>(text.front());
  std::size_t len = 1;
  if (lead >= 0xF0) {
    len = 4;
  } else if (lead >= 0xE0) {
    len = 3;
  } else if (lead >= 0xC0) {
    len = 2;
  }
  return collation_key(text.substr(0, std::min(len, text.size())));
}

bool label_less(const Label& a, const Label& b) {
  const int c = collation_key(a.text).compare(collation_key(b.text));
  if (c != 0) return c < 0;
  return a.id < b.id;
}

std::vector<Label> make_labels(std::span<const SceneObject> objects) {
  std::vector<Label> labels;
  labels.reserve(objects.size());
  for (const auto& obj : objects) {
    Label l;
    l.id = LabelId{obj.id.value};
    l.anchor = obj.id;
    l.text = obj.name;
    labels.push_back(std::move(l));
  }
  return labels;
}

std::vector<Label> labels_with_initial(std::span<const Label> labels, std::string_view letter) {
  const std::string wanted = collation_key(letter);
  std::vector<Label> out;
  for (const auto& l : labels) {
    if (initial_of(l.text) == wanted) out.push_back(l);
  }
  return out;
}

double LayoutParams::label_extent(int k) const {
  const double r = circle_radius(k);
  return 2.0 * std::asin(std::min(1.0, label_width / (2.0 * r)));
}

std::vector<double> unwrapped_positions(const CircleLayout& circle) {
  std::vector<double> u;
  u.reserve(circle.entries.size());
  for (std::size_t i = 0; i < circle.entries.size(); ++i) {
    if (i == 0) {
      u.push_back(circle.entries[0].rad);
    } else {
      u.push_back(u.back() + wrap_angle(circle.entries[i].rad - circle.entries[i - 1].rad));
    }
  }
  return u;
}

std::size_t MultiCircleLayout::placed_count() const {
  std::size_t n = 0;
  for (const auto& c : circles) n += c.entries.size();
  return n;
}

const Label* MultiCircleLayout::find(LabelId id) const {
  for (const auto& c : circles) {
    for (const auto& l : c.entries) {
      if (l.id == id) return &l;
    }
  }
  return nullptr;
}

std::optional<ScreenVec> MultiCircleLayout::position_of(LabelId id) const {
  for (const auto& c : circles) {
    for (const auto& l : c.entries) {
      if (l.id == id) {
        return center + c.radius * ScreenVec(std::cos(l.rad), std::sin(l.rad));
      }
    }
  }
  return std::nullopt;
}

std::vector<Label> MultiCircleLayout::placed() const {
  std::vector<Label> out;
  for (const auto& c : circles) out.insert(out.end(), c.entries.begin(), c.entries.end());
  return out;
}

bool AnnularSector::contains(const ScreenVec& p) const {
  const ScreenVec d = p - center;
  const double r = d.norm();
  if (r < r_min || r > r_max || r <= 1e-12) return false;
  return angular_distance(radian_of(d), radian) < half_width;
}

const LetterSlot* FirstLevelLayout::find(std::string_view letter) const {
  const std::string key = collation_key(letter);
  for (const auto& slot : letters) {
    if (slot.letter == key) return &slot;
  }
  return nullptr;
}

FirstLevelLayout build_first_level(std::span<const Label> labels) {
  if (labels.empty()) throw Error(ErrorCode::EmptyLabelSet, "first-level layout needs labels");
  std::vector<std::string> initials;
  for (const auto& l : labels) initials.push_back(initial_of(l.text));
  std::sort(initials.begin(), initials.end());
  initials.erase(std::unique(initials.begin(), initials.end()), initials.end());

  FirstLevelLayout layout;
  const auto count = static_cast<double>(initials.size());
  const double half_width = kPi / std::max(count, 8.0);
  for (std::size_t i = 0; i < initials.size(); ++i) {
    LetterSlot slot;
    slot.letter = initials[i];
    slot.radian = kTwoPi * static_cast<double>(i) / count;
    slot.position = layout.radius * ScreenVec(std::cos(slot.radian), std::sin(slot.radian));
    slot.region = AnnularSector{ScreenVec::Zero(), slot.radian, half_width, 0.85, 1.15};
    layout.letters.push_back(std::move(slot));
  }
  return layout;
}

std::vector<Label> init_label_attrs(std::span<const Label> labels,
                                    std::span<const SceneObject> objects,
                                    const ViewState& view, const Projection& proj,
                                    std::vector<std::string>* diagnostics) {
  std::unordered_map<std::uint32_t, const SceneObject*> by_id;
  for (const auto& obj : objects) by_id.emplace(obj.id.value, &obj);

  std::vector<Label> out;
  out.reserve(labels.size());
  for (Label l : labels) {
    const auto it = by_id.find(l.anchor.value);
    if (it == by_id.end()) {
      throw Error(ErrorCode::UnresolvedAnchor,
                  "label " + std::to_string(l.id.value) + " has no anchor object");
    }
    const Vec3 rel = it->second->position - view.viewpoint;

    ScreenVec offset;
    if (rel.dot(view.view_dir) > 1e-9) {
      offset = world_to_screen(it->second->position, view, proj) - view.gaze;
      l.dis = std::min(offset.norm(), kMaxLabelDistance);
    } else {
      // Behind the viewer: keep the direction the user would have to turn.
      const Vec3 lateral = project_to_plane(rel, view.view_dir);
      offset = ScreenVec(lateral.dot(view.right()), lateral.dot(view.up));
      l.dis = kMaxLabelDistance;
      if (diagnostics != nullptr) {
        diagnostics->push_back("label " + std::to_string(l.id.value) +
                               ": anchor behind the view, using its lateral direction");
      }
    }
    l.rad = offset.norm() > 1e-12 ? radian_of(offset) : 0.0;
    l.rad_p = l.rad;
    l.ran = RadianRange::centered(l.rad, range_width(l.dis));
    l.circle_index.reset();
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<std::size_t> longest_sorted_run(std::span<const Label* const> seq) {
  std::vector<std::size_t> tails;  // index of the smallest tail for each length
  std::vector<std::ptrdiff_t> prev(seq.size(), -1);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto pos = std::lower_bound(tails.begin(), tails.end(), i,
                                      [&](std::size_t a, std::size_t b) {
                                        return label_less(*seq[a], *seq[b]);
                                      });
    if (pos != tails.begin()) prev[i] = static_cast<std::ptrdiff_t>(*(pos - 1));
    if (pos == tails.end()) {
      tails.push_back(i);
    } else {
      *pos = i;
    }
  }
  std::vector<std::size_t> run;
  if (tails.empty()) return run;
  for (auto i = static_cast<std::ptrdiff_t>(tails.back()); i >= 0; i = prev[i]) {
    run.push_back(static_cast<std::size_t>(i));
  }
  std::reverse(run.begin(), run.end());
  return run;
}

SortedSplit max_sorted_subseq(std::span<const Label> scl) {
  SortedSplit split;
  const std::size_t n = scl.size();
  if (n == 0) return split;

  std::vector<const Label*> by_angle;
  by_angle.reserve(n);
  for (const auto& l : scl) by_angle.push_back(&l);
  std::stable_sort(by_angle.begin(), by_angle.end(), [](const Label* a, const Label* b) {
    if (a->rad_p != b->rad_p) return a->rad_p < b->rad_p;
    return label_less(*a, *b);
  });

  std::vector<const Label*> rotated(n);
  std::vector<const Label*> best;
  for (std::size_t cut = 0; cut < n; ++cut) {
    std::rotate_copy(by_angle.begin(), by_angle.begin() + static_cast<std::ptrdiff_t>(cut),
                     by_angle.end(), rotated.begin());
    const auto run = longest_sorted_run(rotated);
    if (run.size() > best.size()) {
      best.clear();
      for (auto i : run) best.push_back(rotated[i]);
      if (best.size() == n) break;
    }
  }

  std::vector<bool> chosen(n, false);
  for (const Label* p : best) {
    chosen[static_cast<std::size_t>(p - scl.data())] = true;
    Label l = *p;
    l.rad = l.rad_p;
    split.seed.push_back(std::move(l));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!chosen[i]) split.rest.push_back(scl[i]);
  }
  return split;
}

namespace {

void erase_by_id(std::vector<Label>& labels, LabelId id) {
  std::erase_if(labels, [id](const Label& l) { return l.id == id; });
}

}  // namespace

bool insert_label(CircleLayout& circle, std::vector<Label>& scl, const Label& label,
                  const LayoutParams& params) {
  auto& entries = circle.entries;
  const std::size_t n = entries.size();
  if (n == 0) {
    Label l = label;
    l.rad = wrap_angle(l.rad_p);
    l.circle_index = circle.index;
    entries.push_back(std::move(l));
    erase_by_id(scl, label.id);
    return true;
  }

  const auto idx = static_cast<std::size_t>(
      std::lower_bound(entries.begin(), entries.end(), label, label_less) - entries.begin());
  const Label& left = entries[(idx + n - 1) % n];
  const Label& right = entries[idx % n];
  if (!label.ran.contains(left.rad) || !label.ran.contains(right.rad)) return false;

  // Open slot between the neighbours, counterclockwise.
  const double lo = left.rad;
  const double hi = lo + (n == 1 ? kTwoPi : wrap_angle(right.rad - left.rad));
  if (!(hi > lo)) return false;

  // Median rule: halfway between the nearer neighbour and the range end
  // closest to it.
  const bool left_nearer =
      angular_distance(left.rad, label.rad_p) <= angular_distance(right.rad, label.rad_p);
  const double near_pos = left_nearer ? lo : hi;
  const double shift = kTwoPi * std::round((near_pos - label.ran.center()) / kTwoPi);
  const double rep_min = label.ran.min + shift;
  const double rep_max = label.ran.max + shift;
  const double end = (near_pos - rep_min <= rep_max - near_pos) ? rep_min : rep_max;
  const double target = 0.5 * (near_pos + end);

  // Slot intersected with every copy of the range; pick the piece holding
  // the target, else the nearest one.
  double best_a = 0.0;
  double best_b = 0.0;
  double best_dist = std::numeric_limits<double>::infinity();
  const auto m_lo = static_cast<int>(std::floor((lo - label.ran.max) / kTwoPi));
  const auto m_hi = static_cast<int>(std::ceil((hi - label.ran.min) / kTwoPi));
  for (int m = m_lo; m <= m_hi; ++m) {
    const double a = std::max(lo, label.ran.min + kTwoPi * m);
    const double b = std::min(hi, label.ran.max + kTwoPi * m);
    if (!(a < b)) continue;
    const double dist = target < a ? a - target : (target > b ? target - b : 0.0);
    if (dist < best_dist) {
      best_dist = dist;
      best_a = a;
      best_b = b;
    }
  }
  if (!std::isfinite(best_dist)) return false;

  const double margin = std::min(params.min_gap(circle.index), 0.5 * (best_b - best_a));
  const double low = best_a + (best_a <= lo ? margin : 0.0);
  const double high = best_b - (best_b >= hi ? margin : 0.0);
  const double x = std::clamp(target, low, high);
  if (!(x > lo && x < hi)) return false;

  Label placed = label;
  placed.rad = wrap_angle(x);
  placed.circle_index = circle.index;
  entries.insert(entries.begin() + static_cast<std::ptrdiff_t>(idx), std::move(placed));
  erase_by_id(scl, label.id);
  return true;
}

namespace {

// Working copy of one circle for relaxation, in unwrapped coordinates.
class RelaxState {
 public:
  RelaxState(const CircleLayout& circle, double gap) : gap_(gap) {
    u_ = unwrapped_positions(circle);
    for (std::size_t i = 0; i < u_.size(); ++i) {
      const RadianRange& r = circle.entries[i].ran;
      const double shift = kTwoPi * std::round((u_[i] - r.center()) / kTwoPi);
      lo_.push_back(std::min(r.min + shift, u_[i]));
      hi_.push_back(std::max(r.max + shift, u_[i]));
      index_.push_back(i);
    }
    moved_.assign(u_.size(), false);
  }

  std::size_t size() const { return u_.size(); }
  std::size_t next(std::size_t i) const { return (i + 1) % size(); }
  std::size_t prev(std::size_t i) const { return (i + size() - 1) % size(); }
  double next_pos(std::size_t i) const { return i + 1 == size() ? u_[0] + kTwoPi : u_[i + 1]; }
  double prev_pos(std::size_t i) const { return i == 0 ? u_.back() - kTwoPi : u_[i - 1]; }

  /// How far the pair (i, next(i)) falls short of the minimum gap.
  double shortfall(std::size_t i) const { return gap_ - (next_pos(i) - u_[i]); }
  bool overlaps(std::size_t i) const { return size() > 1 && shortfall(i) > 1e-12; }

  std::vector<std::size_t> overlapped() const {
    std::vector<std::pair<double, std::size_t>> deg;
    if (size() < 2) return {};
    for (std::size_t i = 0; i < size(); ++i) {
      const double d = std::max(shortfall(i), shortfall(prev(i)));
      if (d > 1e-12) deg.emplace_back(d, i);
    }
    std::stable_sort(deg.begin(), deg.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::size_t> out;
    for (const auto& [d, i] : deg) out.push_back(i);
    return out;
  }

  double sub_step(std::size_t i, double cap) const {
    return std::max(0.0, std::min({cap, (u_[i] - prev_pos(i)) - gap_, u_[i] - lo_[i]}));
  }
  double add_step(std::size_t i, double cap) const {
    return std::max(0.0, std::min({cap, (next_pos(i) - u_[i]) - gap_, hi_[i] - u_[i]}));
  }

  // Pushes the pair (i, next(i)) apart.
  void separate(std::size_t i, double cap) {
    const std::size_t j = next(i);
    const double down = sub_step(i, cap);
    if (down > 0.0) {
      u_[i] -= down;
      moved_[index_[i]] = true;
    }
    const double up = add_step(j, cap);
    if (up > 0.0) {
      u_[j] += up;
      moved_[index_[j]] = true;
    }
  }

  /// Removes position i and returns the original entry index.
  std::size_t remove(std::size_t i) {
    const std::size_t original = index_[i];
    u_.erase(u_.begin() + static_cast<std::ptrdiff_t>(i));
    lo_.erase(lo_.begin() + static_cast<std::ptrdiff_t>(i));
    hi_.erase(hi_.begin() + static_cast<std::ptrdiff_t>(i));
    index_.erase(index_.begin() + static_cast<std::ptrdiff_t>(i));
    return original;
  }

  double position(std::size_t i) const { return u_[i]; }
  std::size_t original(std::size_t i) const { return index_[i]; }
  bool moved(std::size_t original_index) const { return moved_[original_index]; }

 private:
  double gap_;
  std::vector<double> u_, lo_, hi_;
  std::vector<std::size_t> index_;
  std::vector<bool> moved_;
};

}  // namespace

std::vector<Label> relax(CircleLayout& circle, int k, int n_it, const LayoutParams& params) {
  RelaxState state(circle, params.min_gap(k));
  auto oa = state.overlapped();
  if (oa.empty()) return {};

  const double cap = kPi / ((k + 1) * 72.0);
  std::vector<std::size_t> removed;
  for (int iter = 0; !oa.empty(); ++iter) {
    const std::size_t len = oa.size();
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t front = oa[i];
      if (state.overlaps(front)) state.separate(front, cap);
      const std::size_t back = oa[len - 1 - i];
      if (state.overlaps(state.prev(back))) state.separate(state.prev(back), cap);
    }
    oa = state.overlapped();
    if (!oa.empty() && iter > n_it) {
      removed.push_back(state.remove(oa.front()));
      oa = state.overlapped();
    }
  }

  std::vector<Label> kept;
  kept.reserve(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    Label l = circle.entries[state.original(i)];
    if (state.moved(state.original(i))) l.rad = wrap_angle(state.position(i));
    kept.push_back(std::move(l));
  }
  std::vector<Label> dropped;
  std::sort(removed.begin(), removed.end());
  for (auto idx : removed) {
    Label l = circle.entries[idx];
    l.rad = l.rad_p;
    l.circle_index.reset();
    dropped.push_back(std::move(l));
  }
  circle.entries = std::move(kept);
  return dropped;
}

MultiCircleLayout build_second_level(std::span<const Label> labels,
                                     std::span<const SceneObject> objects,
                                     const ViewState& view, const Projection& proj,
                                     const LayoutParams& params) {
  MultiCircleLayout mcl;
  mcl.center = view.gaze;
  std::vector<Label> scl = init_label_attrs(labels, objects, view, proj, &mcl.diagnostics);
  std::stable_sort(scl.begin(), scl.end(), label_less);

  for (int k = 0; k < params.max_circles && !scl.empty(); ++k) {
    CircleLayout circle;
    circle.index = k;
    circle.radius = params.circle_radius(k);

    auto split = max_sorted_subseq(scl);
    circle.entries = std::move(split.seed);
    for (auto& l : circle.entries) l.circle_index = k;
    scl = std::move(split.rest);

    const std::vector<Label> pending = scl;
    for (const auto& l : pending) insert_label(circle, scl, l, params);

    for (auto& l : relax(circle, k, params.relax_iters, params)) {
      mcl.diagnostics.push_back("label " + std::to_string(l.id.value) +
                                ": removed by relaxation on circle " + std::to_string(k));
      mcl.dropped.push_back(std::move(l));
    }
    mcl.circles.push_back(std::move(circle));
  }

  for (auto& l : scl) {
    mcl.diagnostics.push_back("label " + std::to_string(l.id.value) + ": no room in " +
                              std::to_string(params.max_circles) + " circles");
    mcl.dropped.push_back(std::move(l));
  }
  return mcl;
}

}  // namespace labelguide
