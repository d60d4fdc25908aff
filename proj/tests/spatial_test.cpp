#include <gtest/gtest.h>

#include "oracles.hpp"
#include "percemon/eval.hpp"
#include "percemon/spatial.hpp"
#include "random_ast.hpp"

using namespace percemon;

namespace {

const Universe kU{200, 200};

Region box(double x0, double y0, double x1, double y1) {
  return Region::from_box({x0, y0, x1, y1}, kU);
}

} // namespace

TEST(Region, IntersectionOfOverlappingBoxes) {
  EXPECT_DOUBLE_EQ(intersect(box(0, 0, 10, 10), box(5, 0, 15, 10)).area(), 50);
}

TEST(Region, UnionCountsOverlapOnce) {
  EXPECT_DOUBLE_EQ(unite(box(0, 0, 10, 10), box(5, 0, 15, 10)).area(), 150);
}

TEST(Region, ComplementOfFullIsEmpty) {
  EXPECT_TRUE(complement(Region::full(kU), kU).is_empty());
  EXPECT_DOUBLE_EQ(complement(Region::empty(kU), kU).area(), 200 * 200);
}

TEST(Region, DisjointBoxesDoNotIntersect) {
  EXPECT_TRUE(intersect(box(0, 0, 10, 10), box(10, 0, 20, 10)).is_empty());
}

TEST(Region, DegenerateBoxIsEmpty) {
  EXPECT_TRUE(box(5, 5, 5, 20).is_empty());
  EXPECT_TRUE(box(250, 250, 300, 300).is_empty());
}

TEST(Region, BoxIsClippedToUniverse) {
  EXPECT_DOUBLE_EQ(box(-10, -10, 10, 10).area(), 100);
}

TEST(Region, MixingUniversesIsAnError) {
  Region a = Region::full({10, 10});
  Region b = Region::full({20, 10});
  EXPECT_THROW(unite(a, b), std::logic_error);
  EXPECT_THROW(intersect(a, b), std::logic_error);
  EXPECT_THROW(complement(a, {20, 10}), std::logic_error);
}

TEST(Region, RectanglesStayDisjoint) {
  testkit::TestRng rng(3);
  for (int round = 0; round < 200; ++round) {
    Region r = Region::empty(kU);
    for (int k = 0; k < 6; ++k) {
      int x = rng.between(0, 190), y = rng.between(0, 190);
      Region b = box(x, y, x + rng.between(1, 60), y + rng.between(1, 60));
      r = rng.chance(0.5) ? unite(r, b) : complement(intersect(complement(r, kU), b), kU);
    }
    auto rects = r.rects();
    for (std::size_t i = 0; i < rects.size(); ++i) {
      EXPECT_FALSE(rects[i].degenerate());
      for (std::size_t j = i + 1; j < rects.size(); ++j) {
        EXPECT_TRUE(intersect(Region::from_box(rects[i], kU), Region::from_box(rects[j], kU))
                        .is_empty());
      }
    }
  }
}

TEST(SpatialTerm, MatchesRasterization) {
  testkit::TestRng rng(17);
  std::vector<std::string> vars = {"a", "b", "c", "d"};
  Frame frame;
  frame.width = 60;
  frame.height = 40;
  std::vector<Frame> trace = {frame};
  for (int round = 0; round < 300; ++round) {
    Env env;
    testkit::BoxEnv boxes;
    for (const auto &v : vars) {
      int x = rng.between(0, 59), y = rng.between(0, 39);
      BoundingBox b{double(x), double(y), double(rng.between(x, 60)), double(rng.between(y, 40))};
      env.objects.push_back({v, {1, b}});
      boxes[v] = b;
    }
    SpatialRef term = testkit::random_spatial(rng, vars, 4, true);
    Region r = eval_spatial(*term, {trace, 0}, env);
    EXPECT_DOUBLE_EQ(r.area(), double(testkit::raster_area(*term, boxes, 60, 40)));
  }
}
