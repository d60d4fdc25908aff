#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "percemon/generator.hpp"

using namespace percemon;

TEST(Generator, SameSeedSameTrace) {
  GenConfig cfg;
  cfg.frames = 40;
  cfg.objects = 5;
  cfg.drop_prob = 0.2;
  cfg.jump_prob = 0.1;
  cfg.conf_dip_prob = 0.1;
  cfg.seed = 99;
  EXPECT_EQ(generate(cfg), generate(cfg));
  GenConfig other = cfg;
  other.seed = 100;
  EXPECT_NE(generate(cfg), generate(other));
}

TEST(Generator, CleanTracesAreValid) {
  GenConfig cfg;
  cfg.frames = 100;
  cfg.objects = 6;
  cfg.seed = 1;
  TraceStream trace = generate(cfg);
  ASSERT_EQ(trace.size(), 100u);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i > 0) {
      EXPECT_NO_THROW(check_successor(trace[i - 1], trace[i]));
    }
    EXPECT_EQ(trace[i].objects.size(), 6u);
    for (const auto &[id, o] : trace[i].objects) {
      EXPECT_GE(o.confidence, 0.85);
      EXPECT_LE(o.confidence, 0.99);
      EXPECT_EQ(clip_box(o.bbox, cfg.width, cfg.height), o.bbox);
      EXPECT_EQ(o.bbox.xmin, std::floor(o.bbox.xmin));
    }
  }
  EXPECT_EQ(testkit::phi1_by_hand(trace, {}), std::vector<bool>(100, true));
}

TEST(Generator, DropEverythingAfterTheFirstFrame) {
  GenConfig cfg;
  cfg.frames = 10;
  cfg.objects = 3;
  cfg.drop_prob = 1.0;
  TraceStream trace = generate(cfg);
  EXPECT_EQ(trace[0].objects.size(), 3u);
  for (std::size_t i = 1; i < trace.size(); ++i) {
    EXPECT_TRUE(trace[i].objects.empty());
  }
}

TEST(Generator, ScheduledFaults) {
  GenConfig cfg;
  cfg.frames = 20;
  cfg.objects = 2;
  cfg.seed = 4;
  cfg.scheduled = {{ScheduledFault::Kind::Drop, 5, 1},
                   {ScheduledFault::Kind::Jump, 10, 2},
                   {ScheduledFault::Kind::ConfDip, 15, 1}};
  TraceStream trace = generate(cfg);
  EXPECT_EQ(trace[5].find(1), nullptr);
  EXPECT_NE(trace[6].find(1), nullptr);
  const BoundingBox &a = trace[9].find(2)->bbox;
  const BoundingBox &b = trace[10].find(2)->bbox;
  bool disjoint = a.xmax <= b.xmin || b.xmax <= a.xmin || a.ymax <= b.ymin || b.ymax <= a.ymin;
  EXPECT_TRUE(disjoint);
  EXPECT_LT(trace[15].find(1)->confidence, 0.7);
  EXPECT_GE(trace[16].find(1)->confidence, 0.85);
}

TEST(Generator, RejectsBadProbabilities) {
  GenConfig cfg;
  cfg.drop_prob = 1.5;
  EXPECT_THROW(generate(cfg), std::invalid_argument);
}
