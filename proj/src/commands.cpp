#include "percemon/commands.hpp"

#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "percemon/analysis.hpp"
#include "percemon/eval.hpp"
#include "percemon/monitor.hpp"
#include "percemon/parser.hpp"

namespace percemon {

namespace {

constexpr double kDefaultWidth = 800.0;
constexpr double kDefaultHeight = 600.0;

struct Extent {
  std::optional<double> width;
  std::optional<double> height;
  SpecParams rest;
};

Extent split_extent(const SpecParams &params) {
  Extent e;
  for (const auto &[name, value] : params) {
    if (name == "width") {
      e.width = value;
    } else if (name == "height") {
      e.height = value;
    } else {
      e.rest.emplace(name, value);
    }
  }
  return e;
}

IngestOptions ingest_options(const Extent &e) {
  IngestOptions opts;
  if (e.width && e.height) {
    opts.default_extent = {*e.width, *e.height};
  }
  return opts;
}

// Parses and bind-checks the formula named by `spec` for a given frame extent.
FormulaRef load_spec(const SpecOptions &spec, const Extent &extent, const Frame *first) {
  double width = extent.width.value_or(first ? first->width : kDefaultWidth);
  double height = extent.height.value_or(first ? first->height : kDefaultHeight);
  FormulaRef f = parse(load_spec_text(spec.spec, extent.rest, width, height));
  auto errors = check_bindings(*f);
  if (!errors.empty()) {
    std::string msg;
    for (const auto &e : errors) {
      msg += (msg.empty() ? "" : "\n") + describe(e);
    }
    throw SpecError(msg);
  }
  return f;
}

void print_verdict(std::ostream &out, const Verdict &v) { out << verdict_json(v) << '\n'; }

template <class Body> int guarded(std::ostream &err, Body body) {
  try {
    return body();
  } catch (const ParseFailure &e) {
    for (const auto &pe : e.errors()) {
      err << "error: " << pe.loc.line << ':' << pe.loc.column << ": " << pe.message << '\n';
    }
    return kExitInputError;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::logic_error &e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

} // namespace

int cmd_check(const SpecOptions &spec, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    Extent extent = split_extent(spec.params);
    FormulaRef f = load_spec(spec, extent, nullptr);
    FormulaRef core = desugar(f);
    FrameBounds bounds = compute_bounds(core);
    out << "spec:      " << format(*f) << '\n';
    out << "desugared: " << format(*core) << '\n';
    out << "bounds:    " << to_string(bounds) << '\n';
    if (!bounds.history) {
      err << "warning: history=unbounded; monitor needs --max-history\n";
    }
    if (!bounds.horizon) {
      err << "warning: horizon=unbounded; monitor needs --max-horizon\n";
    }
    return kExitOk;
  });
}

int cmd_run(const SpecOptions &spec, const std::string &trace_path, std::ostream &out,
            std::ostream &err) {
  return guarded(err, [&] {
    Extent extent = split_extent(spec.params);
    std::ifstream in(trace_path);
    if (!in) {
      throw SpecError("cannot read trace file '" + trace_path + "'");
    }
    TraceStream trace = read_stream(in, ingest_options(extent));
    FormulaRef f = load_spec(spec, extent, trace.empty() ? nullptr : &trace.front());
    for (std::size_t i = 0; i < trace.size(); ++i) {
      auto start = std::chrono::steady_clock::now();
      bool value = eval(*f, {trace, i});
      auto elapsed = std::chrono::steady_clock::now() - start;
      print_verdict(out, {trace[i].frame_number, trace[i].timestamp, value,
                          static_cast<std::uint64_t>(
                              std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed)
                                  .count())});
    }
    return kExitOk;
  });
}

int cmd_monitor(const SpecOptions &spec, std::istream &in, const MonitorOverrides &overrides,
                std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    Extent extent = split_extent(spec.params);
    MonitorConfig config{overrides.max_history, overrides.max_horizon};
    // Validate up front so spec errors surface before any input is read.
    Monitor probe(load_spec(spec, extent, nullptr), config);
    (void)probe;

    FrameReader reader(in, ingest_options(extent));
    std::optional<Monitor> monitor;
    auto emit = [&](const std::vector<Verdict> &verdicts) {
      for (const auto &v : verdicts) {
        print_verdict(out, v);
      }
      out.flush();
    };
    while (auto frame = reader.next()) {
      if (!monitor) {
        monitor.emplace(load_spec(spec, extent, &*frame), config);
      }
      emit(monitor->push_frame(std::move(*frame)));
    }
    if (monitor) {
      emit(monitor->flush());
      if (monitor->stats().zero_denominators > 0) {
        err << "warning: " << monitor->stats().zero_denominators
            << " ratio atom evaluations had a zero denominator\n";
      }
    }
    return kExitOk;
  });
}

int cmd_bench(const BenchOptions &options, bool count_assignments, bool json, std::ostream &out,
              std::ostream &err) {
  return guarded(err, [&] {
    auto reports = run_bench(options);
    if (!json) {
      out << "spec\tobjects\tframes\tmean_ns\tp99_ns\tseed";
      out << (count_assignments ? "\tassignments\tassignments_per_frame\n" : "\n");
    }
    for (const auto &r : reports) {
      std::uint64_t per_frame = r.frames ? r.assignments / r.frames : 0;
      if (json) {
        nlohmann::ordered_json j;
        j["spec"] = r.spec_name;
        j["objects"] = r.object_count;
        j["frames"] = r.frames;
        j["mean_eval_time_ns"] = r.mean_eval_time_ns;
        j["p99_eval_time_ns"] = r.p99_eval_time_ns;
        j["seed"] = r.seed;
        if (count_assignments) {
          j["assignments"] = r.assignments;
          j["assignments_per_frame"] = per_frame;
        }
        out << j.dump() << '\n';
        continue;
      }
      out << r.spec_name << '\t' << r.object_count << '\t' << r.frames << '\t'
          << r.mean_eval_time_ns << '\t' << r.p99_eval_time_ns << '\t' << r.seed;
      if (count_assignments) {
        out << '\t' << r.assignments << '\t' << per_frame;
      }
      out << '\n';
    }
    return kExitOk;
  });
}

int cmd_gen(const GenConfig &config, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    for (const Frame &f : generate(config)) {
      out << serialize_frame(f) << '\n';
    }
    return kExitOk;
  });
}

} // namespace percemon
