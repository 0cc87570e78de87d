#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "labelguide/simulation.hpp"

namespace labelguide {

struct CompareConfig {
  Scene scene;
  std::vector<MethodCondition> conditions;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  AgentConfig agent;
  TrialLimits limits;
  PipelineConfig pipeline;
  /// Worker threads; results do not depend on this.
  unsigned threads = 1;
};

struct TrialRecord {
  MethodCondition condition = MethodCondition::EC3;
  std::size_t trial = 0;
  ObjectId target;
  std::uint64_t agent_seed = 0;
  TrialMetrics metrics;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& values);

struct ConditionSummary {
  MethodCondition condition = MethodCondition::EC3;
  std::size_t trials = 0;
  std::size_t successes = 0;
  MeanStd time;
  MeanStd rotation_deg;
  MeanStd circles;
  MeanStd pruned;
  MeanStd dropped;
};

struct TrendFlag {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct Report {
  std::vector<TrialRecord> trials;
  std::vector<ConditionSummary> rows;
  std::vector<TrendFlag> trends;
};

/// Target and agent seed for trial i, shared by every condition.
ObjectId trial_target(const Scene& scene, std::uint64_t seed, std::size_t trial);

/// Runs every condition on the same targets and seeds and aggregates the
/// results. Throws InvalidArgument without conditions or trials.
Report compare_methods(const CompareConfig& config);

/// Summaries and trend flags from already computed trials, rows in the order
/// conditions first appear.
Report summarize(std::vector<TrialRecord> trials, const std::vector<MethodCondition>& conditions);

nlohmann::json trial_json(const TrialRecord& record);
nlohmann::json report_json(const Report& report);
std::string report_csv(const Report& report);
std::string report_text(const Report& report);

}  // namespace labelguide
