#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "percemon/commands.hpp"

using namespace percemon;

namespace {

struct TempFile {
  std::filesystem::path path;

  explicit TempFile(const std::string &content) {
    path = std::filesystem::temp_directory_path() /
           ("percemon_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + std::to_string(counter++) + ".txt");
    std::ofstream(path) << content;
  }
  ~TempFile() { std::filesystem::remove(path); }

  static inline int counter = 0;
};

std::string gen_text(std::size_t frames, std::size_t objects, double drop = 0.0) {
  GenConfig cfg;
  cfg.frames = frames;
  cfg.objects = objects;
  cfg.drop_prob = drop;
  cfg.seed = 12;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_gen(cfg, out, err), 0);
  return out.str();
}

std::vector<bool> verdicts_of(const std::string &jsonl) {
  std::vector<bool> out;
  std::istringstream in(jsonl);
  std::string line;
  while (std::getline(in, line)) {
    out.push_back(line.find("\"verdict\":true") != std::string::npos);
  }
  return out;
}

} // namespace

TEST(Commands, CheckPrintsBounds) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_check({"builtin:phi1", {}}, out, err), 0);
  EXPECT_NE(out.str().find("history=1 horizon=0"), std::string::npos);
}

TEST(Commands, CheckWarnsAboutUnboundedSpecs) {
  TempFile spec("true until true\n");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_check({spec.path.string(), {}}, out, err), 0);
  EXPECT_NE(err.str().find("horizon=unbounded"), std::string::npos);
}

TEST(Commands, CheckReportsBindErrorsWithLocation) {
  TempFile spec("exists {a} @\n  prob(b) > 0.5\n");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_check({spec.path.string(), {}}, out, err), 1);
  EXPECT_NE(err.str().find("2:8"), std::string::npos) << err.str();
}

TEST(Commands, UnknownParamIsAnError) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_check({"builtin:phi1", {{"c9", 1}}}, out, err), 1);
  EXPECT_EQ(cmd_check({"builtin:phi7", {}}, out, err), 1);
}

TEST(Commands, RunEmptyTrace) {
  TempFile trace("");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_run({"builtin:phi1", {}}, trace.path.string(), out, err), 0);
  EXPECT_TRUE(out.str().empty());
}

TEST(Commands, MonitorMatchesRun) {
  std::string text = gen_text(60, 4, 0.1);
  TempFile trace(text);
  for (const char *spec : {"builtin:phi1", "builtin:phi2"}) {
    std::ostringstream run_out, mon_out, err;
    ASSERT_EQ(cmd_run({spec, {}}, trace.path.string(), run_out, err), 0);
    std::istringstream in(text);
    ASSERT_EQ(cmd_monitor({spec, {}}, in, {}, mon_out, err), 0);
    EXPECT_EQ(verdicts_of(run_out.str()), verdicts_of(mon_out.str()));
    EXPECT_EQ(verdicts_of(run_out.str()).size(), 60u);
  }
}

TEST(Commands, MonitorRejectsUnboundedSpecWithoutOverrides) {
  TempFile spec("eventually true\n");
  std::istringstream in(gen_text(3, 1));
  std::ostringstream out, err;
  EXPECT_EQ(cmd_monitor({spec.path.string(), {}}, in, {}, out, err), 1);
  EXPECT_NE(err.str().find("unbounded"), std::string::npos);
  std::istringstream again(gen_text(3, 1));
  EXPECT_EQ(cmd_monitor({spec.path.string(), {}}, again, {std::nullopt, 5}, out, err), 0);
}

TEST(Commands, MonitorRejectsNonMonotonicInput) {
  std::istringstream in(R"({"frame":1,"timestamp":0,"width":10,"height":10,"objects":[]}
{"frame":1,"timestamp":1,"width":10,"height":10,"objects":[]}
)");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_monitor({"builtin:phi1", {}}, in, {}, out, err), 1);
  EXPECT_NE(err.str().find("NonMonotonic"), std::string::npos);
  EXPECT_EQ(verdicts_of(out.str()).size(), 1u);
}

TEST(Commands, DroppedFramesFailPhi1WhereObjectsReappear) {
  TempFile trace(gen_text(20, 3, 1.0));
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run({"builtin:phi1", {}}, trace.path.string(), out, err), 0);
  // Nothing reappears, so nothing fails.
  EXPECT_EQ(verdicts_of(out.str()), std::vector<bool>(20, true));
}

TEST(Commands, BenchTable) {
  BenchOptions opt;
  opt.spec = "builtin:probe2";
  opt.object_counts = {3};
  opt.frames = 10;
  opt.repeat = 1;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_bench(opt, true, true, out, err), 0);
  EXPECT_NE(out.str().find("\"assignments\":90"), std::string::npos) << out.str();
  EXPECT_NE(out.str().find("\"assignments_per_frame\":9"), std::string::npos);
}

TEST(Commands, GenIsByteIdentical) { EXPECT_EQ(gen_text(30, 5, 0.2), gen_text(30, 5, 0.2)); }

TEST(Cli, ExitCodes) {
  std::string cli = PERCEMON_CLI;
  EXPECT_EQ(std::system((cli + " check --spec builtin:phi1 > /dev/null").c_str()), 0);
  int code = std::system((cli + " check --spec /nonexistent/spec 2> /dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(code), 1);
}
