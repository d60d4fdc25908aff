#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "percemon/bench.hpp"
#include "percemon/builtins.hpp"
#include "percemon/generator.hpp"

namespace percemon {

/// Exit codes shared by every command.
enum ExitCode : int { kExitOk = 0, kExitInputError = 1, kExitInternalError = 2 };

/// `--param` values. `width` and `height` are not spec constants: they set the
/// extent the builtin margins are derived from and the extent assumed for
/// records that omit it.
struct SpecOptions {
  std::string spec;
  SpecParams params;
};

struct MonitorOverrides {
  std::optional<std::size_t> max_history;
  std::optional<std::size_t> max_horizon;
};

/// Prints the parsed and desugared spec and its frame bounds.
int cmd_check(const SpecOptions &spec, std::ostream &out, std::ostream &err);

/// Offline evaluation of every frame of the trace file; one verdict per line.
int cmd_run(const SpecOptions &spec, const std::string &trace_path, std::ostream &out,
            std::ostream &err);

/// Online monitoring of a JSONL frame stream; verdicts are written (and
/// flushed) as soon as they are final.
int cmd_monitor(const SpecOptions &spec, std::istream &in, const MonitorOverrides &overrides,
                std::ostream &out, std::ostream &err);

/// Tab-separated table, or one JSON object per line with `json`.
int cmd_bench(const BenchOptions &options, bool count_assignments, bool json,
              std::ostream &out, std::ostream &err);

int cmd_gen(const GenConfig &config, std::ostream &out, std::ostream &err);

} // namespace percemon
