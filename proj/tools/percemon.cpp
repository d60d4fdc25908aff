#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "percemon/commands.hpp"

namespace {

using namespace percemon;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("percemon");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char *level = std::getenv("PERCEMON_LOG")) {
    auto parsed = spdlog::level::from_str(level);
    if (parsed == spdlog::level::off && std::string(level) != "off") {
      spdlog::warn("ignoring unknown PERCEMON_LOG level '{}'", level);
    } else {
      spdlog::set_level(parsed);
    }
  }
}

SpecParams parse_params(const std::vector<std::string> &raw) {
  SpecParams params;
  for (const auto &item : raw) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw CLI::ValidationError("--param", "expected name=value, got '" + item + "'");
    }
    double value = 0.0;
    const char *first = item.data() + eq + 1;
    const char *last = item.data() + item.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw CLI::ValidationError("--param", "'" + item.substr(eq + 1) + "' is not a number");
    }
    params[item.substr(0, eq)] = value;
  }
  return params;
}

} // namespace

int main(int argc, char **argv) {
  setup_logging();
  std::ios::sync_with_stdio(false);

  CLI::App app{"Online monitor for perception quality specifications"};
  app.require_subcommand(1);

  std::string spec;
  std::vector<std::string> raw_params;
  auto add_spec = [&](CLI::App *cmd) {
    cmd->add_option("--spec", spec, "Spec file, or builtin:phi1 / builtin:phi2 / builtin:probeK")
        ->required();
    cmd->add_option("--param", raw_params, "Builtin constant override, name=value");
  };

  auto *check = app.add_subcommand("check", "Parse a spec and print its frame bounds");
  add_spec(check);

  std::string trace_path;
  auto *run = app.add_subcommand("run", "Evaluate a spec offline over a trace file");
  add_spec(run);
  run->add_option("--trace", trace_path, "Frame JSONL file")->required();

  std::string input = "-";
  MonitorOverrides overrides;
  auto *monitor = app.add_subcommand("monitor", "Monitor a frame stream online");
  add_spec(monitor);
  monitor->add_option("--input", input, "Frame JSONL file, or - for stdin");
  monitor->add_option("--max-history", overrides.max_history, "History override (frames)");
  monitor->add_option("--max-horizon", overrides.max_horizon, "Horizon override (frames)");

  BenchOptions bench_opts;
  bool count_assignments = false;
  bool bench_json = false;
  auto *bench = app.add_subcommand("bench", "Time the online monitor on generated traces");
  add_spec(bench);
  bench->add_option("--objects", bench_opts.object_counts, "Object counts")->delimiter(',');
  bench->add_option("--frames", bench_opts.frames, "Frames per trace");
  bench->add_option("--seed", bench_opts.seed, "Generator seed");
  bench->add_option("--repeat", bench_opts.repeat, "Runs per trace; fastest time per frame wins")
      ->check(CLI::PositiveNumber);
  bench->add_flag("--count-assignments", count_assignments, "Report quantifier assignments");
  bench->add_flag("--json", bench_json, "JSON lines instead of a table");

  GenConfig gen_cfg;
  auto *gen = app.add_subcommand("gen", "Generate a synthetic frame stream");
  gen->add_option("--frames", gen_cfg.frames, "Number of frames");
  gen->add_option("--objects", gen_cfg.objects, "Number of tracked objects");
  gen->add_option("--drop-prob", gen_cfg.drop_prob, "Per-frame missed detection probability")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--jump-prob", gen_cfg.jump_prob, "Per-frame box teleport probability")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--conf-dip-prob", gen_cfg.conf_dip_prob,
                  "Per-frame low confidence probability")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gen_cfg.seed, "Random seed");
  gen->add_option("--width", gen_cfg.width, "Image width");
  gen->add_option("--height", gen_cfg.height, "Image height");

  SpecParams params;
  try {
    app.parse(argc, argv);
    params = parse_params(raw_params);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }
  SpecOptions spec_opts{spec, params};

  if (check->parsed()) {
    spdlog::debug("check {}", spec);
    return cmd_check(spec_opts, std::cout, std::cerr);
  }
  if (run->parsed()) {
    spdlog::debug("run {} over {}", spec, trace_path);
    return cmd_run(spec_opts, trace_path, std::cout, std::cerr);
  }
  if (monitor->parsed()) {
    spdlog::debug("monitor {} reading {}", spec, input);
    if (input == "-") {
      return cmd_monitor(spec_opts, std::cin, overrides, std::cout, std::cerr);
    }
    std::ifstream in(input);
    if (!in) {
      spdlog::error("cannot read '{}'", input);
      return kExitInputError;
    }
    return cmd_monitor(spec_opts, in, overrides, std::cout, std::cerr);
  }
  if (bench->parsed()) {
    bench_opts.spec = spec;
    bench_opts.params = params;
    spdlog::info("bench {} frames={} seed={} repeat={}", spec, bench_opts.frames, bench_opts.seed,
                 bench_opts.repeat);
    return cmd_bench(bench_opts, count_assignments, bench_json, std::cout, std::cerr);
  }
  spdlog::debug("gen frames={} objects={} seed={}", gen_cfg.frames, gen_cfg.objects,
                gen_cfg.seed);
  return cmd_gen(gen_cfg, std::cout, std::cerr);
}
