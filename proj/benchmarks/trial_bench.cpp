#include <benchmark/benchmark.h>

#include "labelguide/report.hpp"

namespace {

using namespace labelguide;

void BM_Trial(benchmark::State& state, MethodCondition method) {
  SceneOptions opts;
  opts.n_objects = static_cast<std::size_t>(state.range(0));
  opts.preset = ScenePreset::Scatter;
  const Scene scene = generate_scene(opts);
  std::size_t i = 0;
  std::int64_t ticks = 0;
  for (auto _ : state) {
    AgentConfig agent;
    agent.seed = i;
    const auto m = run_trial(scene, trial_target(scene, 0, i++), method, agent);
    ticks += m.ticks;
  }
  state.counters["ticks_per_trial"] =
      benchmark::Counter(static_cast<double>(ticks), benchmark::Counter::kAvgIterations);
}

BENCHMARK_CAPTURE(BM_Trial, ec3, MethodCondition::EC3)->Arg(30)->Arg(90)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Trial, ec2, MethodCondition::EC2)->Arg(90)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Trial, ec1, MethodCondition::EC1)->Arg(90)->Unit(benchmark::kMillisecond);

}  // namespace
