#include <gtest/gtest.h>

#include "percemon/builtins.hpp"
#include "percemon/generator.hpp"
#include "percemon/monitor.hpp"
#include "percemon/parser.hpp"
#include "random_ast.hpp"

using namespace percemon;

namespace {

std::vector<Frame> empty_frames(std::size_t n) {
  std::vector<Frame> out;
  for (std::size_t i = 0; i < n; ++i) {
    Frame f;
    f.frame_number = i;
    f.timestamp = i * 0.1;
    f.width = 100;
    f.height = 100;
    out.push_back(f);
  }
  return out;
}

std::vector<bool> monitor_all(Monitor &m, const TraceStream &trace) {
  std::vector<bool> out;
  for (const Frame &f : trace) {
    for (const auto &v : m.push_frame(f)) {
      out.push_back(v.value);
    }
  }
  for (const auto &v : m.flush()) {
    out.push_back(v.value);
  }
  return out;
}

} // namespace

TEST(Monitor, BuiltinBounds) {
  Monitor m(parse(builtin_text("builtin:phi1", {}, 800, 600)));
  EXPECT_EQ(m.history(), 1u);
  EXPECT_EQ(m.horizon(), 0u);
  EXPECT_EQ(m.capacity(), 2u);
}

TEST(Monitor, UnboundedNeedsOverrides) {
  EXPECT_THROW(Monitor(parse("true until true")), ConfigError);
  Monitor m(parse("true until true"), {std::nullopt, 4});
  EXPECT_EQ(m.horizon(), 4u);
  EXPECT_EQ(m.history(), 0u);
}

TEST(Monitor, OverridesMayNotShrinkInferredBounds) {
  EXPECT_THROW(Monitor(parse("next next true"), {std::nullopt, 1}), ConfigError);
  Monitor m(parse("next next true"), {3, 5});
  EXPECT_EQ(m.capacity(), 9u);
}

TEST(Monitor, RejectsUnboundVariables) {
  EXPECT_THROW(Monitor(parse("prob(a) > 0.5")), std::invalid_argument);
}

TEST(Monitor, HorizonZeroEmitsEveryPush) {
  Monitor m(parse("prev true"));
  for (const Frame &f : empty_frames(5)) {
    EXPECT_EQ(m.push_frame(f).size(), 1u);
  }
  EXPECT_TRUE(m.flush().empty());
}

TEST(Monitor, HorizonTwoLagsByTwo) {
  Monitor m(parse("next next true"));
  EXPECT_EQ(m.capacity(), 3u);
  auto frames = empty_frames(5);
  EXPECT_TRUE(m.push_frame(frames[0]).empty());
  EXPECT_TRUE(m.push_frame(frames[1]).empty());
  auto v = m.push_frame(frames[2]);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].frame_number, 0u);
  EXPECT_TRUE(v[0].value);
  m.push_frame(frames[3]);
  m.push_frame(frames[4]);
  auto rest = m.flush();
  ASSERT_EQ(rest.size(), 2u);
  EXPECT_EQ(rest[0].frame_number, 3u);
  EXPECT_FALSE(rest[0].value);
  EXPECT_EQ(rest[1].frame_number, 4u);
  EXPECT_LE(m.buffered(), m.capacity());
}

TEST(Monitor, RejectsOutOfOrderFrames) {
  Monitor m(parse("true"));
  auto frames = empty_frames(2);
  m.push_frame(frames[1]);
  EXPECT_THROW(m.push_frame(frames[0]), IngestError);
}

TEST(Monitor, PushAfterFlushIsMisuse) {
  Monitor m(parse("true"));
  m.flush();
  EXPECT_THROW(m.push_frame(empty_frames(1)[0]), MonitorError);
}

TEST(Monitor, VerdictJson) {
  EXPECT_EQ(verdict_json({3, 0.25, true, 120}),
            R"({"frame":3,"timestamp":0.25,"verdict":true,"eval_time_ns":120})");
}

TEST(Monitor, MatchesOfflineWithLargeOverrides) {
  testkit::TestRng rng(404);
  for (int round = 0; round < 300; ++round) {
    FormulaRef f = testkit::random_formula(rng, {});
    TraceStream trace = testkit::random_trace(rng, {});
    FrameBounds inferred = compute_bounds(f);
    std::size_t len = trace.size();
    Monitor m(f, {std::max(len, inferred.history.value_or(0)),
                  std::max(len, inferred.horizon.value_or(0))});
    EXPECT_EQ(monitor_all(m, trace), evaluate_trace(*f, trace)) << format(*f);
  }
}

TEST(Monitor, InferredBoundsAreEnough) {
  testkit::TestRng rng(405);
  int checked = 0;
  for (int round = 0; round < 3000 && checked < 300; ++round) {
    testkit::FormulaOptions opt;
    opt.guards = true;
    FormulaRef f = testkit::random_formula(rng, opt);
    if (!compute_bounds(f).finite()) {
      continue;
    }
    ++checked;
    TraceStream trace = testkit::random_trace(rng, {});
    Monitor m(f);
    EXPECT_EQ(monitor_all(m, trace), evaluate_trace(*f, trace)) << format(*f);
  }
  EXPECT_GE(checked, 300);
}

TEST(Monitor, Deterministic) {
  GenConfig cfg;
  cfg.frames = 50;
  cfg.objects = 4;
  cfg.drop_prob = 0.1;
  cfg.seed = 5;
  TraceStream trace = generate(cfg);
  FormulaRef f = parse(builtin_text("builtin:phi1", {}, 800, 600));
  Monitor a(f), b(f);
  EXPECT_EQ(monitor_all(a, trace), monitor_all(b, trace));
}
