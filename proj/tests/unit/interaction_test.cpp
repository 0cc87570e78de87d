#include <algorithm>

#include <gtest/gtest.h>

#include "labelguide/interaction.hpp"
#include "labelguide/scene.hpp"

namespace labelguide {
namespace {

constexpr double kDt = 1.0 / 60.0;

std::vector<SceneObject> small_scene() {
  const Vec3 eye(0, 1.6, 0);
  return {
      {ObjectId{1}, "anvil", eye + Vec3(-1.5, 0.2, -4)},
      {ObjectId{2}, "awl", eye + Vec3(1.0, -0.3, -5)},
      {ObjectId{3}, "axe", eye + Vec3(0.3, 0.8, -3)},
      {ObjectId{4}, "brush", eye + Vec3(-0.4, -0.6, -4)},
      {ObjectId{5}, "chisel", eye + Vec3(2.0, 0.1, -3)},
  };
}

Pipeline make_pipeline(MethodCondition method, PipelineConfig cfg = {}) {
  cfg.method = method;
  return Pipeline(small_scene(), default_spawn(), cfg);
}

bool has(const std::vector<PipelineEvent>& events, EventKind kind) {
  return std::any_of(events.begin(), events.end(), [&](const auto& e) { return e.kind == kind; });
}

/// Holds the gaze on `point` for `ticks` ticks, one sample per tick.
std::vector<PipelineEvent> hold(Pipeline& p, const ScreenVec& point, int ticks) {
  std::vector<PipelineEvent> all;
  for (int i = 0; i < ticks; ++i) {
    auto a = p.apply(GazeSample{p.time() + kDt, point, std::nullopt});
    auto b = p.advance(kDt);
    all.insert(all.end(), a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
  }
  return all;
}

TEST(Dwell, FiresOnceAtThreshold) {
  const std::vector<AnnularSector> regions{{ScreenVec::Zero(), 0.0, 0.3, 0.8, 1.2}};
  DwellState d;
  std::optional<std::size_t> hit;
  int fired_at = -1;
  for (int i = 1; i <= 40; ++i) {
    hit = dwell_update(d, ScreenVec(1, 0), regions, kDt);
    if (hit) {
      EXPECT_EQ(fired_at, -1);
      fired_at = i;
    }
  }
  EXPECT_EQ(fired_at, 24);
  EXPECT_THROW(dwell_update(d, ScreenVec(1, 0), regions, 0.0), Error);
}

TEST(Dwell, LeavingResetsAccumulation) {
  const std::vector<AnnularSector> regions{{ScreenVec::Zero(), 0.0, 0.3, 0.8, 1.2}};
  DwellState d;
  for (int i = 0; i < 20; ++i) EXPECT_FALSE(dwell_update(d, ScreenVec(1, 0), regions, kDt));
  EXPECT_FALSE(dwell_update(d, ScreenVec(0, 0), regions, kDt));
  EXPECT_EQ(d.accumulated, 0.0);
  for (int i = 0; i < 23; ++i) EXPECT_FALSE(dwell_update(d, ScreenVec(1, 0), regions, kDt));
  EXPECT_TRUE(dwell_update(d, ScreenVec(1, 0), regions, kDt));
}

TEST(Pipeline, ButtonOpensLetterRing) {
  auto p = make_pipeline(MethodCondition::EC3);
  EXPECT_EQ(p.phase(), Phase::Idle);
  EXPECT_TRUE(p.apply(ButtonPress{}).empty());
  EXPECT_EQ(p.phase(), Phase::FirstLevel);
  ASSERT_TRUE(p.first_level());
  EXPECT_EQ(p.first_level()->letters.size(), 3u);
  EXPECT_TRUE(has(p.apply(ButtonPress{}), EventKind::InvalidTransition));
  EXPECT_EQ(p.phase(), Phase::FirstLevel);
}

TEST(Pipeline, DwellOnLetterEntersSecondLevel) {
  auto p = make_pipeline(MethodCondition::EC3);
  p.apply(ButtonPress{});
  const ScreenVec slot = p.first_level()->find("a")->position;
  EXPECT_FALSE(has(hold(p, slot, 23), EventKind::LetterSelected));
  const auto events = hold(p, slot, 1);
  ASSERT_TRUE(has(events, EventKind::LetterSelected));
  EXPECT_EQ(events.front().payload.at("letter"), "a");
  EXPECT_EQ(p.phase(), Phase::SecondLevel);
  ASSERT_TRUE(p.second_level());
  EXPECT_EQ(p.second_level()->placed_count(), 3u);
  EXPECT_NEAR((p.second_level()->center - slot).norm(), 0.0, 1e-12);
}

TEST(Pipeline, FreeSearchIgnoresButton) {
  auto p = make_pipeline(MethodCondition::CC1);
  EXPECT_TRUE(has(p.apply(ButtonPress{}), EventKind::InvalidTransition));
  EXPECT_EQ(p.phase(), Phase::Idle);
}

TEST(Pipeline, FullScreenSkipsLetterRing) {
  auto p = make_pipeline(MethodCondition::CC2);
  p.apply(ButtonPress{});
  EXPECT_EQ(p.phase(), Phase::SecondLevel);
  EXPECT_FALSE(p.first_level());
  EXPECT_EQ(p.second_level()->placed_count(), 5u);
}

TEST(Pipeline, DwellSelectsOneLabelAndConfirmLocates) {
  auto p = make_pipeline(MethodCondition::CC2);
  p.apply(ButtonPress{});
  const auto pos = p.second_level()->position_of(LabelId{4});
  ASSERT_TRUE(pos);
  const auto events = hold(p, *pos, 24);
  ASSERT_TRUE(has(events, EventKind::LabelSelected));
  EXPECT_EQ(p.phase(), Phase::Guiding);
  ASSERT_EQ(p.guidance().flights.size(), 1u);
  EXPECT_EQ(p.guidance().flights[0].anchor, ObjectId{4});

  EXPECT_TRUE(has(p.apply(Confirm{ObjectId{2}}), EventKind::InvalidTransition));
  EXPECT_EQ(p.phase(), Phase::Guiding);
  EXPECT_TRUE(has(p.apply(Confirm{ObjectId{4}}), EventKind::TargetLocated));
  EXPECT_EQ(p.phase(), Phase::Located);
  EXPECT_EQ(p.located(), ObjectId{4});
}

TEST(Pipeline, ConfirmOutsideGuidanceIsInvalid) {
  auto p = make_pipeline(MethodCondition::EC3);
  EXPECT_TRUE(has(p.apply(Confirm{ObjectId{1}}), EventKind::InvalidTransition));
  EXPECT_EQ(p.phase(), Phase::Idle);
}

TEST(Pipeline, CancelReturnsToIdle) {
  auto p = make_pipeline(MethodCondition::EC3);
  p.apply(ButtonPress{});
  hold(p, p.first_level()->find("a")->position, 24);
  ASSERT_EQ(p.phase(), Phase::SecondLevel);
  EXPECT_TRUE(has(p.apply(Cancel{}), EventKind::Cancelled));
  EXPECT_EQ(p.phase(), Phase::Idle);
  EXPECT_FALSE(p.second_level());
  EXPECT_FALSE(p.selected_letter());
}

TEST(Pipeline, GazeDirectionChoosesCandidates) {
  auto p = make_pipeline(MethodCondition::EC3);
  p.apply(ButtonPress{});
  hold(p, p.first_level()->find("a")->position, 24);
  const auto& layout = *p.second_level();
  const auto target = layout.position_of(LabelId{3});
  ASSERT_TRUE(target);
  const ScreenVec step = (*target - layout.center) / 20.0;
  std::vector<PipelineEvent> events;
  for (int i = 1; i <= 20 && p.phase() == Phase::SecondLevel; ++i) {
    auto e = hold(p, layout.center + step * i, 1);
    events.insert(events.end(), e.begin(), e.end());
  }
  ASSERT_TRUE(has(events, EventKind::CandidatesChosen));
  EXPECT_EQ(p.phase(), Phase::Guiding);
  EXPECT_TRUE(p.guidance().find_anchor(ObjectId{3}) != nullptr);
}

TEST(Pipeline, SaccadeDuringGuidanceRestartsDirectionFit) {
  for (const double limit : {150.0, 1e12}) {
    PipelineConfig cfg;
    cfg.saccade_speed = limit;
    auto p = make_pipeline(MethodCondition::CC2, cfg);
    p.apply(ButtonPress{});
    const ScreenVec pos = *p.second_level()->position_of(LabelId{5});
    hold(p, pos, 24);
    ASSERT_EQ(p.phase(), Phase::Guiding);
    const auto dir = flight_screen_direction(p.guidance().flights[0], p.view(),
                                             p.config().projection, FlightDirection::Chord);
    ASSERT_TRUE(dir);
    // One jump of a screen unit against the flight within a tick, then a steady fixation.
    const auto events = hold(p, pos - dir->normalized(), 10);
    if (limit < 1e6) {
      EXPECT_FALSE(has(events, EventKind::LabelPruned));
      EXPECT_EQ(p.phase(), Phase::Guiding);
    } else {
      EXPECT_TRUE(has(events, EventKind::LabelPruned));
      EXPECT_EQ(p.phase(), Phase::Idle);
    }
  }
}

TEST(Pipeline, ExpiredFlightsEndGuidance) {
  PipelineConfig cfg;
  cfg.guidance.confirm_timeout = 0.5;
  auto p = make_pipeline(MethodCondition::CC2, cfg);
  p.apply(ButtonPress{});
  const auto pos = *p.second_level()->position_of(LabelId{5});
  hold(p, pos, 24);
  ASSERT_EQ(p.phase(), Phase::Guiding);
  std::vector<PipelineEvent> events;
  for (int i = 0; i < 60 * 20 && p.phase() == Phase::Guiding; ++i) {
    auto e = hold(p, pos, 1);
    events.insert(events.end(), e.begin(), e.end());
  }
  EXPECT_TRUE(has(events, EventKind::FlightArrived));
  EXPECT_TRUE(has(events, EventKind::FlightExpired));
  EXPECT_TRUE(has(events, EventKind::GuidanceExhausted));
  EXPECT_EQ(p.phase(), Phase::Idle);
}

TEST(Pipeline, AdvanceRejectsNonPositiveDt) {
  auto p = make_pipeline(MethodCondition::EC3);
  EXPECT_THROW(p.advance(0.0), Error);
  EXPECT_THROW(p.advance(-1.0), Error);
}

TEST(Pipeline, HeadTurnMovesView) {
  auto p = make_pipeline(MethodCondition::EC3);
  const Vec3 dir = Vec3(1, 0, -1).normalized();
  p.apply(GazeSample{0.1, ScreenVec::Zero(), dir});
  EXPECT_NEAR((p.view().view_dir - dir).norm(), 0.0, 1e-12);
  EXPECT_TRUE(p.view().is_orthonormal());
  EXPECT_NEAR((p.layout_view().view_dir - Vec3(0, 0, -1)).norm(), 0.0, 1e-12);
}

TEST(Names, PhaseAndEventStrings) {
  EXPECT_EQ(to_string(Phase::SecondLevel), "second_level");
  EXPECT_EQ(to_string(EventKind::LabelPruned), "LabelPruned");
}

}  // namespace
}  // namespace labelguide
