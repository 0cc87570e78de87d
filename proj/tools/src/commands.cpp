#include "labelguide_cli/commands.hpp"

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "labelguide/export.hpp"
#include "labelguide/report.hpp"
#include "labelguide/scene.hpp"
#include "labelguide/session.hpp"
#include "labelguide_cli/server.hpp"

namespace labelguide::cli {

namespace {

struct TuningFlags {
  int max_circles = 6;
  int relax_iters = 60;
  double dwell_ms = 400.0;
  double fov_deg = 30.0;
  double tick_hz = 60.0;

  void add_to(CLI::App& app, bool timing) {
    app.add_option("--max-circles", max_circles, "Second-level circle budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--relax-iters", relax_iters, "Relaxation iterations before removal")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--fov-deg", fov_deg, "Full central field of view in degrees")
        ->check(CLI::Range(1.0, 179.0))
        ->capture_default_str();
    if (timing) {
      app.add_option("--dwell-ms", dwell_ms, "Dwell time for selections")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
      app.add_option("--tick-hz", tick_hz, "Simulation tick rate")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
    }
  }

  PipelineConfig pipeline(MethodCondition method) const {
    PipelineConfig cfg;
    cfg.method = method;
    cfg.projection = Projection::from_central_fov_deg(fov_deg);
    cfg.layout.max_circles = max_circles;
    cfg.layout.relax_iters = relax_iters;
    cfg.dwell_seconds = dwell_ms / 1000.0;
    return cfg;
  }
};

struct SceneFlags {
  std::string path;
  std::uint64_t seed = 0;
  std::size_t objects = 90;
  std::string preset = "grid";
  double skew = 0.0;

  void add_generate_to(CLI::App& app) {
    app.add_option("--scene-seed", seed, "Seed for a generated scene")->capture_default_str();
    app.add_option("--objects", objects, "Object count for a generated scene")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--preset", preset, "grid or scatter")
        ->check(CLI::IsMember({"grid", "scatter"}))
        ->capture_default_str();
    app.add_option("--skew", skew, "Share of names forced to one initial")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
  }

  Scene load() const {
    if (!path.empty()) return load_scene(path);
    SceneOptions opts;
    opts.seed = seed;
    opts.n_objects = objects;
    opts.preset = parse_preset(preset);
    opts.skew = skew;
    return generate_scene(opts);
  }
};

std::vector<MethodCondition> parse_methods(const std::string& list) {
  std::vector<MethodCondition> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_method(item));
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "no method given");
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed for " + path);
}

int cmd_layout(const SceneFlags& scene_flags, const TuningFlags& tuning, const std::string& method_name,
               const std::string& letter, const std::string& out_path, const std::string& svg_path,
               std::ostream& out, std::ostream& err) {
  MethodCondition method;
  Scene scene;
  try {
    method = parse_method(method_name);
    scene = scene_flags.load();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
  if (method == MethodCondition::CC1) {
    err << "error: cc1 has no layout\n";
    return kExitParse;
  }
  if (uses_first_level(method) && letter.empty()) {
    err << "error: --letter is required for " << to_string(method) << '\n';
    return kExitParse;
  }

  const PipelineConfig cfg = tuning.pipeline(method);
  MultiCircleLayout layout;
  nlohmann::json doc;
  try {
    const auto all = make_labels(scene.objects);
    ViewState view = scene.spawn;
    view.gaze = ScreenVec::Zero();
    std::vector<Label> labels;
    if (uses_first_level(method)) {
      labels = labels_with_initial(all, letter);
      if (labels.empty()) {
        err << "warning: no labels start with '" << letter << "'\n";
        layout.center = view.gaze;
      } else {
        const FirstLevelLayout ring = build_first_level(all);
        if (const LetterSlot* slot = ring.find(letter)) view.gaze = slot->position;
      }
    } else {
      labels = all;
    }
    if (!labels.empty()) {
      layout = layout_for(method, labels, scene.objects, view, cfg.projection, cfg.layout);
    }
    doc = layout_json(layout);
    doc["method"] = std::string(to_string(method));
    doc["letter"] = letter;
  } catch (const Error& e) {
    err << "error: layout failed: " << e.what() << '\n';
    return kExitLayout;
  }

  for (const auto& d : layout.diagnostics) err << "note: " << d << '\n';
  try {
    if (out_path.empty()) {
      out << doc.dump(2) << '\n';
    } else {
      write_file(out_path, doc.dump(2) + "\n");
    }
    if (!svg_path.empty()) write_file(svg_path, layout_svg(layout));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  std::size_t placed = 0;
  for (const auto& c : layout.circles) placed += c.entries.size();
  err << placed << " labels on " << layout.circles.size() << " circles, " << layout.dropped.size()
      << " dropped\n";
  return kExitOk;
}

int cmd_simulate(const SceneFlags& scene_flags, const TuningFlags& tuning, const std::string& methods,
                 std::size_t trials, std::uint64_t seed, unsigned threads,
                 const std::string& out_prefix, std::ostream& out, std::ostream& err) {
  CompareConfig cfg;
  try {
    cfg.scene = scene_flags.load();
    cfg.conditions = parse_methods(methods);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.threads = threads;
  cfg.pipeline = tuning.pipeline(MethodCondition::EC3);
  cfg.limits.tick_hz = tuning.tick_hz;

  Report report;
  try {
    report = compare_methods(cfg);
  } catch (const Error& e) {
    err << "error: simulation failed: " << e.what() << '\n';
    return kExitLayout;
  }

  out << report_text(report);
  if (out_prefix.empty()) return kExitOk;
  try {
    std::string lines;
    for (const auto& t : report.trials) lines += trial_json(t).dump() + "\n";
    write_file(out_prefix + ".trials.jsonl", lines);
    write_file(out_prefix + ".summary.csv", report_csv(report));
    write_file(out_prefix + ".summary.json", report_json(report).dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_scene(const SceneFlags& scene_flags, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
  Scene scene;
  try {
    scene = scene_flags.load();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
  try {
    if (out_path.empty()) {
      out << scene_to_json(scene).dump(2) << '\n';
    } else {
      save_scene(scene, out_path);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

/// Feeds a recorded client log into a fresh session. With an expected
/// reply log, the first differing line is reported.
int cmd_replay(const ServerOptions& options, const std::string& log_path,
               const std::string& expect_path, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  std::ifstream log(log_path);
  if (!log) {
    err << "error: cannot open " << log_path << '\n';
    return kExitParse;
  }
  std::ostringstream replies;
  serve_stream(options, log, replies);

  if (!out_path.empty()) {
    write_file(out_path, replies.str());
  } else if (expect_path.empty()) {
    out << replies.str();
  }
  if (expect_path.empty()) return kExitOk;

  std::ifstream expect(expect_path);
  if (!expect) {
    err << "error: cannot open " << expect_path << '\n';
    return kExitParse;
  }
  std::istringstream got(replies.str());
  std::string a;
  std::string b;
  for (std::size_t n = 1;; ++n) {
    const bool more_a = static_cast<bool>(std::getline(got, a));
    const bool more_b = static_cast<bool>(std::getline(expect, b));
    if (!more_a && !more_b) break;
    if (more_a != more_b || a != b) {
      err << "replay differs at reply " << n << '\n';
      return kExitFailure;
    }
  }
  out << "replay matches\n";
  return kExitOk;
}

Server* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

int cmd_serve(ServerOptions options, std::uint16_t port, bool stdio, std::ostream& err) {
  if (stdio) {
    serve_stream(options, std::cin, std::cout);
    return kExitOk;
  }
  Server server(std::move(options), port);
  err << "listening on 127.0.0.1:" << server.port() << '\n' << std::flush;
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.run();
  g_server = nullptr;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Label guidance layouts, simulations and sessions", "labelguide"};
  app.require_subcommand(1);

  SceneFlags scene_flags;
  TuningFlags tuning;
  std::string method = "ec3";
  std::string letter;
  std::string out_path;
  std::string svg_path;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  unsigned threads = 1;
  std::uint16_t port = 7878;
  bool stdio = false;
  std::string log_path;
  std::string expect_path;
  std::string record_dir;

  auto* layout = app.add_subcommand("layout", "Build one second-level layout");
  layout->add_option("--scene", scene_flags.path, "Scene file")->required();
  layout->add_option("--method", method, "cc2, ec1, ec2 or ec3")->capture_default_str();
  layout->add_option("--letter", letter, "Initial letter to lay out");
  layout->add_option("--out", out_path, "Layout JSON path, stdout when omitted");
  layout->add_option("--svg", svg_path, "Also draw the layout as SVG");
  tuning.add_to(*layout, false);

  auto* simulate = app.add_subcommand("simulate", "Run scripted trials and compare conditions");
  simulate->add_option("--scene", scene_flags.path, "Scene file, generated when omitted");
  scene_flags.add_generate_to(*simulate);
  simulate->add_option("--method", method, "Comma-separated conditions")->capture_default_str();
  simulate->add_option("--trials", trials, "Trials per condition")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--seed", seed, "Trial seed")->capture_default_str();
  simulate->add_option("--threads", threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--out", out_path, "Prefix for .trials.jsonl, .summary.csv, .summary.json");
  tuning.add_to(*simulate, true);

  auto* scene = app.add_subcommand("scene", "Generate a scene file");
  scene_flags.add_generate_to(*scene);
  scene->add_option("--seed", scene_flags.seed, "Alias of --scene-seed");
  scene->add_option("--out", out_path, "Scene path, stdout when omitted");

  auto* replay = app.add_subcommand("replay", "Feed a recorded client log into a fresh session");
  replay->add_option("--log", log_path, "Client messages, one per line")->required();
  replay->add_option("--scene", scene_flags.path, "Preloaded scene");
  replay->add_option("--expect", expect_path, "Reply log to compare against");
  replay->add_option("--out", out_path, "Reply log path, stdout when omitted");
  tuning.add_to(*replay, true);

  auto* serve = app.add_subcommand("serve", "Serve the session protocol");
  serve->add_option("--port", port, "TCP port on 127.0.0.1, 0 picks one")->capture_default_str();
  serve->add_flag("--stdio", stdio, "Serve one session on stdin and stdout");
  serve->add_option("--scene", scene_flags.path, "Preloaded scene");
  serve->add_option("--record", record_dir, "Directory for per-session client logs");
  tuning.add_to(*serve, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  auto server_options = [&]() -> std::optional<ServerOptions> {
    ServerOptions opts;
    opts.session.pipeline = tuning.pipeline(MethodCondition::EC3);
    opts.session.tick_hz = tuning.tick_hz;
    if (!record_dir.empty()) opts.record_dir = record_dir;
    if (!scene_flags.path.empty()) {
      try {
        opts.scene = load_scene(scene_flags.path);
      } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return std::nullopt;
      }
    }
    return opts;
  };

  try {
    if (*layout) {
      return cmd_layout(scene_flags, tuning, method, letter, out_path, svg_path, out, err);
    }
    if (*simulate) {
      return cmd_simulate(scene_flags, tuning, method, trials, seed, threads, out_path, out, err);
    }
    if (*scene) return cmd_scene(scene_flags, out_path, out, err);
    auto opts = server_options();
    if (!opts) return kExitParse;
    if (*replay) return cmd_replay(*opts, log_path, expect_path, out_path, out, err);
    return cmd_serve(std::move(*opts), port, stdio, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace labelguide::cli
