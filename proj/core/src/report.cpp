#include "labelguide/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace labelguide {

namespace {

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

const ConditionSummary* row_for(const Report& r, MethodCondition m) {
  for (const auto& row : r.rows) {
    if (row.condition == m) return &row;
  }
  return nullptr;
}

}  // namespace

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return out;
}

ObjectId trial_target(const Scene& scene, std::uint64_t seed, std::size_t trial) {
  std::mt19937_64 rng(seed + trial);
  std::uniform_int_distribution<std::size_t> pick(0, scene.objects.size() - 1);
  return scene.objects[pick(rng)].id;
}

Report compare_methods(const CompareConfig& config) {
  if (config.conditions.empty()) throw Error(ErrorCode::InvalidArgument, "no conditions to compare");
  if (config.trials == 0) throw Error(ErrorCode::InvalidArgument, "trial count must be positive");
  if (config.scene.objects.empty()) throw Error(ErrorCode::InvalidArgument, "scene has no objects");

  std::vector<TrialRecord> records(config.conditions.size() * config.trials);
  for (std::size_t c = 0; c < config.conditions.size(); ++c) {
    for (std::size_t i = 0; i < config.trials; ++i) {
      auto& r = records[c * config.trials + i];
      r.condition = config.conditions[c];
      r.trial = i;
      r.target = trial_target(config.scene, config.seed, i);
      r.agent_seed = config.seed + i;
    }
  }

  auto run = [&](TrialRecord& r) {
    AgentConfig agent = config.agent;
    agent.seed = r.agent_seed;
    r.metrics = run_trial(config.scene, r.target, r.condition, agent, config.limits, config.pipeline);
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(config.threads,
                                                           static_cast<unsigned>(records.size())));
  if (workers == 1) {
    for (auto& r : records) run(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < records.size(); i = next++) {
            try {
              run(records[i]);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  return summarize(std::move(records), config.conditions);
}

Report summarize(std::vector<TrialRecord> trials, const std::vector<MethodCondition>& conditions) {
  Report report;
  report.trials = std::move(trials);
  for (auto m : conditions) {
    ConditionSummary row;
    row.condition = m;
    std::vector<double> time, rot, circles, pruned, dropped;
    for (const auto& r : report.trials) {
      if (r.condition != m) continue;
      ++row.trials;
      if (r.metrics.success) ++row.successes;
      time.push_back(r.metrics.time);
      rot.push_back(r.metrics.rotation_deg);
      circles.push_back(static_cast<double>(r.metrics.circle_count));
      pruned.push_back(static_cast<double>(r.metrics.pruned_count));
      dropped.push_back(static_cast<double>(r.metrics.dropped_count));
    }
    row.time = mean_std(time);
    row.rotation_deg = mean_std(rot);
    row.circles = mean_std(circles);
    row.pruned = mean_std(pruned);
    row.dropped = mean_std(dropped);
    report.rows.push_back(row);
  }

  const auto* ec1 = row_for(report, MethodCondition::EC1);
  const auto* ec2 = row_for(report, MethodCondition::EC2);
  const auto* ec3 = row_for(report, MethodCondition::EC3);
  if (ec1 != nullptr && ec3 != nullptr) {
    report.trends.push_back({"rotation_ec3_below_ec1",
                             ec3->rotation_deg.mean < ec1->rotation_deg.mean,
                             fixed(ec3->rotation_deg.mean) + " vs " + fixed(ec1->rotation_deg.mean)});
  }
  if (ec2 != nullptr && ec3 != nullptr) {
    const double rel = ec2->rotation_deg.mean > 0.0
                           ? (ec3->rotation_deg.mean - ec2->rotation_deg.mean) / ec2->rotation_deg.mean
                           : 0.0;
    report.trends.push_back({"rotation_ec3_within_10pct_of_ec2", std::abs(rel) <= 0.10,
                             "relative difference " + fixed(100.0 * rel, 1) + "%"});
    report.trends.push_back({"circles_ec3_below_ec2", ec3->circles.mean < ec2->circles.mean,
                             fixed(ec3->circles.mean) + " vs " + fixed(ec2->circles.mean)});
  }
  return report;
}

nlohmann::json trial_json(const TrialRecord& record) {
  const auto& m = record.metrics;
  return {{"v", 1},
          {"condition", std::string(to_string(record.condition))},
          {"trial", record.trial},
          {"target", record.target.value},
          {"agent_seed", record.agent_seed},
          {"ticks", m.ticks},
          {"time", m.time},
          {"rotation_deg", m.rotation_deg},
          {"success", m.success},
          {"pruned", m.pruned_count},
          {"dropped", m.dropped_count},
          {"circles", m.circle_count},
          {"candidates", m.candidate_count},
          {"fov_time", m.fov_time},
          {"retries", m.retries}};
}

nlohmann::json report_json(const Report& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    auto ms = [](const MeanStd& v) { return nlohmann::json{{"mean", v.mean}, {"std", v.std}}; };
    rows.push_back({{"condition", std::string(to_string(r.condition))},
                    {"trials", r.trials},
                    {"successes", r.successes},
                    {"time", ms(r.time)},
                    {"rotation_deg", ms(r.rotation_deg)},
                    {"circles", ms(r.circles)},
                    {"pruned", ms(r.pruned)},
                    {"dropped", ms(r.dropped)}});
  }
  nlohmann::json trends = nlohmann::json::array();
  for (const auto& t : report.trends) {
    trends.push_back({{"name", t.name}, {"holds", t.holds}, {"detail", t.detail}});
  }
  return {{"v", 1}, {"rows", std::move(rows)}, {"trends", std::move(trends)}};
}

std::string report_csv(const Report& report) {
  std::ostringstream out;
  out << "condition,trials,successes,time_mean,time_std,rotation_mean,rotation_std,"
         "circles_mean,circles_std,pruned_mean,dropped_mean\n";
  for (const auto& r : report.rows) {
    out << to_string(r.condition) << ',' << r.trials << ',' << r.successes << ','
        << fixed(r.time.mean, 6) << ',' << fixed(r.time.std, 6) << ','
        << fixed(r.rotation_deg.mean, 6) << ',' << fixed(r.rotation_deg.std, 6) << ','
        << fixed(r.circles.mean, 6) << ',' << fixed(r.circles.std, 6) << ','
        << fixed(r.pruned.mean, 6) << ',' << fixed(r.dropped.mean, 6) << '\n';
  }
  return out.str();
}

std::string report_text(const Report& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-6s %6s %8s %18s %20s %14s %8s %8s\n", "method", "trials",
                "success", "time s", "rotation deg", "circles", "pruned", "dropped");
  out << line;
  for (const auto& r : report.rows) {
    const std::string time = fixed(r.time.mean, 2) + " +- " + fixed(r.time.std, 2);
    const std::string rot = fixed(r.rotation_deg.mean, 1) + " +- " + fixed(r.rotation_deg.std, 1);
    const std::string circ = fixed(r.circles.mean, 2) + " +- " + fixed(r.circles.std, 2);
    std::snprintf(line, sizeof line, "%-6s %6zu %8zu %18s %20s %14s %8.2f %8.2f\n",
                  std::string(to_string(r.condition)).c_str(), r.trials, r.successes,
                  time.c_str(), rot.c_str(), circ.c_str(), r.pruned.mean, r.dropped.mean);
    out << line;
  }
  for (const auto& t : report.trends) {
    out << (t.holds ? "[yes] " : "[no]  ") << t.name << " (" << t.detail << ")\n";
  }
  return out.str();
}

}  // namespace labelguide
