#include <gtest/gtest.h>

#include "percemon/analysis.hpp"
#include "percemon/builtins.hpp"
#include "percemon/eval.hpp"
#include "percemon/parser.hpp"
#include "random_ast.hpp"

using namespace percemon;

namespace {

FrameBounds bounds(const std::string &text) { return compute_bounds(parse(text)); }

FrameBounds fb(std::optional<std::size_t> h, std::optional<std::size_t> z) { return {h, z}; }

} // namespace

TEST(Desugar, ProducesCoreAndIsIdempotent) {
  testkit::TestRng rng(8);
  for (int round = 0; round < 500; ++round) {
    FormulaRef f = testkit::random_formula(rng, {});
    FormulaRef core = desugar(f);
    EXPECT_TRUE(is_core(*core));
    EXPECT_EQ(desugar(core), core);
  }
}

TEST(Desugar, Rules) {
  EXPECT_EQ(desugar(parse("true && true")), negate(disj(negate(truth()), negate(truth()))));
  EXPECT_EQ(desugar(parse("always true")), negate(until(truth(), negate(truth()))));
  EXPECT_EQ(desugar(parse("once true")), since(truth(), truth()));
}

TEST(Desugar, PreservesSemantics) {
  testkit::TestRng rng(81);
  for (int round = 0; round < 400; ++round) {
    FormulaRef f = testkit::random_formula(rng, {});
    TraceStream trace = testkit::random_trace(rng, {});
    EXPECT_EQ(evaluate_trace(*f, trace), evaluate_trace(*desugar(f), trace)) << format(*f);
  }
}

TEST(Bindings, WellScopedFormulasPass) {
  testkit::TestRng rng(9);
  for (int round = 0; round < 300; ++round) {
    EXPECT_TRUE(check_bindings(*testkit::random_formula(rng, {})).empty());
  }
}

TEST(Bindings, ReportsErrors) {
  auto errs = check_bindings(*parse("exists {a} @ class(b) == \"car\""));
  ASSERT_EQ(errs.size(), 1u);
  EXPECT_EQ(errs[0].kind, BindError::Kind::UnboundVariable);
  EXPECT_EQ(errs[0].loc.line, 1);
  EXPECT_EQ(errs[0].loc.column, 20);

  errs = check_bindings(*parse("pin (x, _) { exists {a} @ x == a }"));
  ASSERT_FALSE(errs.empty());
  EXPECT_EQ(errs[0].kind, BindError::Kind::KindMismatch);

  errs = check_bindings(*parse("exists {a} @ exists {a} @ true"));
  ASSERT_EQ(errs.size(), 1u);
  EXPECT_EQ(errs[0].kind, BindError::Kind::Shadowing);
}

TEST(Bounds, StructuralRules) {
  EXPECT_EQ(bounds("true"), fb(0, 0));
  EXPECT_EQ(bounds("next true"), fb(0, 1));
  EXPECT_EQ(bounds("prev true"), fb(1, 0));
  EXPECT_EQ(bounds("next next true"), fb(0, 2));
  EXPECT_EQ(bounds("!prev prev prev true"), fb(3, 0));
  EXPECT_EQ(bounds("next true || prev prev true"), fb(2, 1));
  EXPECT_EQ(bounds("exists {a} @ next prob(a) > 0.5"), fb(0, 1));
  EXPECT_EQ(bounds("pin (x, _) { prev (C_TIME - x < 1) }"), fb(1, 0));
  EXPECT_EQ(bounds("true until true"), fb(0, std::nullopt));
  EXPECT_EQ(bounds("true since true"), fb(std::nullopt, 0));
  EXPECT_EQ(bounds("next (true since true)"), fb(std::nullopt, 1));
  EXPECT_EQ(bounds("eventually true"), fb(0, std::nullopt));
  EXPECT_EQ(bounds("holds true"), fb(std::nullopt, 0));
}

TEST(Bounds, FrameGuards) {
  EXPECT_EQ(bounds("pin (_, f) { always (C_FRAME - f <= 3 -> true) }"), fb(0, 3));
  EXPECT_EQ(bounds("pin (_, f) { holds (f - C_FRAME < 5 -> true) }"), fb(4, 0));
  EXPECT_EQ(bounds("pin (_, f) { (C_FRAME - f < 2 && true) until true }"), fb(0, 1));
  EXPECT_EQ(bounds("pin (_, f) { eventually (C_FRAME - f == 2 && true) }"), fb(0, 2));
  EXPECT_EQ(bounds("pin (_, f) { (f - C_FRAME <= 1 && true) since true }"), fb(1, 0));
  // A pin inside the operator resets the clock at every step.
  EXPECT_EQ(bounds("always pin (_, f) { C_FRAME - f <= 3 -> true }"), fb(0, std::nullopt));
  // Time does not bound frames.
  EXPECT_EQ(bounds("pin (x, _) { always (C_TIME - x <= 3 -> true) }"), fb(0, std::nullopt));
  // The guard must constrain the right direction.
  EXPECT_EQ(bounds("pin (_, f) { always (f - C_FRAME <= 3 -> true) }"), fb(0, std::nullopt));
}

TEST(Bounds, Builtins) {
  for (const char *name : {"builtin:phi1", "builtin:phi2"}) {
    EXPECT_EQ(compute_bounds(parse(builtin_text(name, {}, 800, 600))), fb(1, 0)) << name;
  }
  EXPECT_EQ(to_string(fb(1, 0)), "history=1 horizon=0");
}
