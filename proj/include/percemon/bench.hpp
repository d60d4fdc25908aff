#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "percemon/builtins.hpp"

namespace percemon {

struct BenchOptions {
  std::string spec = "builtin:phi1";
  SpecParams params;
  std::vector<std::size_t> object_counts = {2, 5, 10};
  std::size_t frames = 300;
  std::uint64_t seed = 0;
  /// Each trace is monitored this many times; a frame's time is the fastest
  /// of its runs, which filters out scheduler noise.
  std::size_t repeat = 5;
  double width = 800.0;
  double height = 600.0;
};

struct BenchReport {
  std::string spec_name;
  std::size_t object_count = 0;
  std::size_t frames = 0;
  std::uint64_t mean_eval_time_ns = 0;
  std::uint64_t p99_eval_time_ns = 0;
  std::uint64_t seed = 0;
  /// Quantifier assignments visited over one monitoring pass.
  std::uint64_t assignments = 0;
  /// Verdict values of the first pass, for determinism checks.
  std::vector<bool> verdicts;
};

/// Generates a fault-free trace per object count and runs the online monitor
/// over it. Only the evaluation call is timed.
std::vector<BenchReport> run_bench(const BenchOptions &options);

} // namespace percemon
