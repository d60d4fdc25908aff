#include "percemon/bench.hpp"

#include <algorithm>
#include <limits>

#include "percemon/generator.hpp"
#include "percemon/monitor.hpp"
#include "percemon/parser.hpp"

namespace percemon {

std::vector<BenchReport> run_bench(const BenchOptions &options) {
  FormulaRef spec = parse(load_spec_text(options.spec, options.params, options.width,
                                         options.height));
  std::size_t repeat = std::max<std::size_t>(1, options.repeat);

  std::vector<BenchReport> reports;
  for (std::size_t count : options.object_counts) {
    GenConfig gen;
    gen.frames = options.frames;
    gen.objects = count;
    gen.seed = options.seed;
    gen.width = options.width;
    gen.height = options.height;
    TraceStream trace = generate(gen);

    BenchReport report;
    report.spec_name = options.spec;
    report.object_count = count;
    report.frames = options.frames;
    report.seed = options.seed;

    std::vector<std::uint64_t> best(trace.size(), std::numeric_limits<std::uint64_t>::max());
    for (std::size_t run = 0; run < repeat; ++run) {
      Monitor monitor(spec);
      std::vector<Verdict> verdicts;
      for (const Frame &f : trace) {
        auto out = monitor.push_frame(f);
        verdicts.insert(verdicts.end(), out.begin(), out.end());
      }
      auto rest = monitor.flush();
      verdicts.insert(verdicts.end(), rest.begin(), rest.end());
      for (std::size_t i = 0; i < verdicts.size(); ++i) {
        best[i] = std::min(best[i], verdicts[i].eval_time_ns);
      }
      if (run == 0) {
        report.assignments = monitor.stats().assignments;
        for (const auto &v : verdicts) {
          report.verdicts.push_back(v.value);
        }
      }
    }

    if (!best.empty()) {
      long double total = 0;
      for (auto t : best) {
        total += t;
      }
      report.mean_eval_time_ns =
          static_cast<std::uint64_t>(total / static_cast<long double>(best.size()));
      // Nearest-rank percentile.
      std::vector<std::uint64_t> sorted = best;
      std::sort(sorted.begin(), sorted.end());
      std::size_t rank = (99 * sorted.size() + 99) / 100;
      report.p99_eval_time_ns = sorted[std::max<std::size_t>(rank, 1) - 1];
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

} // namespace percemon
