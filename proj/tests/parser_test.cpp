#include <gtest/gtest.h>

#include "percemon/analysis.hpp"
#include "percemon/builtins.hpp"
#include "percemon/parser.hpp"
#include "random_ast.hpp"

using namespace percemon;

namespace {

std::string first_error(const std::string &text) {
  try {
    parse(text);
  } catch (const ParseFailure &e) {
    return e.errors().front().message;
  }
  return "";
}

} // namespace

TEST(Parser, PrecedenceOfConnectives) {
  EXPECT_EQ(parse("true || true && !true"),
            disj(truth(), conj(truth(), negate(truth()))));
  EXPECT_EQ(parse("true -> true -> true"), implies(truth(), implies(truth(), truth())));
  EXPECT_EQ(parse("true until true until true"), until(truth(), until(truth(), truth())));
  EXPECT_EQ(parse("next true until prev true"), until(next(truth()), prev(truth())));
  EXPECT_EQ(parse("not true and true or true implies true"),
            implies(disj(conj(negate(truth()), truth()), truth()), truth()));
}

TEST(Parser, QuantifierScopeExtendsRight) {
  FormulaRef f = parse("exists {a} @ a == a && true");
  ASSERT_TRUE(f->is<fm::Exists>());
  EXPECT_TRUE(f->as<fm::Exists>()->body->is<fm::And>());
}

TEST(Parser, Atoms) {
  FormulaRef f = parse("exists {a, b} @ prob(a) / prob(b) >= 0.5");
  const auto *ex = f->as<fm::Exists>();
  ASSERT_NE(ex, nullptr);
  ASSERT_EQ(ex->vars.size(), 2u);
  const auto *ratio = ex->body->as<fm::ProbCmpRatio>();
  ASSERT_NE(ratio, nullptr);
  EXPECT_EQ(ratio->ratio, 0.5);
  EXPECT_EQ(parse("exists {a, b} @ prob(a) >= 0.5 * prob(b)"), f);

  FormulaRef clock = parse("pin (x, f) { C_TIME - x <= 1.5 && f - C_FRAME > -2 }");
  const auto *freeze = clock->as<fm::Freeze>();
  ASSERT_NE(freeze, nullptr);
  const auto *both = freeze->body->as<fm::And>();
  ASSERT_NE(both, nullptr);
  const auto *tc = both->lhs->as<fm::TimeConstraint>();
  ASSERT_NE(tc, nullptr);
  EXPECT_EQ(tc->order, ClockOrder::CurrentMinusPinned);
  EXPECT_EQ(tc->bound, 1.5);
  const auto *fc = both->rhs->as<fm::FrameConstraint>();
  ASSERT_NE(fc, nullptr);
  EXPECT_EQ(fc->order, ClockOrder::PinnedMinusCurrent);
  EXPECT_EQ(fc->bound, -2);

  FormulaRef cls = parse("exists {a} @ class(a) != \"car\"");
  EXPECT_TRUE(cls->as<fm::Exists>()->body->is<fm::Not>());
}

TEST(Parser, CommentsAndWhitespace) {
  EXPECT_EQ(parse("# leading\n  true # trailing\n"), truth());
}

TEST(Parser, Diagnostics) {
  EXPECT_NE(first_error("exists {a} @ foo(a)").find("unknown keyword"), std::string::npos);
  EXPECT_NE(first_error("exists {a} @ prob(a) == 0.5").find("not allowed"), std::string::npos);
  EXPECT_NE(first_error("pin (_, f) { C_FRAME - f <= 1.5 }").find("integer"),
            std::string::npos);
  EXPECT_FALSE(first_error("true &&").empty());
  EXPECT_FALSE(first_error("(true").empty());
  EXPECT_FALSE(first_error("true true").empty());
}

TEST(Parser, LexicalErrorsAreAllReported) {
  try {
    parse("true $ && \"open");
    FAIL();
  } catch (const ParseFailure &e) {
    EXPECT_EQ(e.errors().size(), 2u);
    EXPECT_EQ(e.errors()[0].loc.line, 1);
    EXPECT_EQ(e.errors()[0].loc.column, 6);
  }
}

TEST(Parser, RoundTripsRandomFormulas) {
  testkit::TestRng rng(2024);
  for (int round = 0; round < 2000; ++round) {
    testkit::FormulaOptions opt;
    opt.sugar = rng.chance(0.7);
    opt.guards = rng.chance(0.3);
    opt.odd_labels = true;
    FormulaRef f = testkit::random_formula(rng, opt);
    std::string text = format(*f);
    ASSERT_EQ(parse(text), f) << text;
    EXPECT_EQ(format(*parse(text)), text);
  }
}

TEST(Parser, RoundTripsBuiltins) {
  for (const char *name : {"builtin:phi1", "builtin:phi2", "builtin:probe3"}) {
    FormulaRef f = parse(builtin_text(name, {}, 800, 600));
    EXPECT_EQ(parse(format(*f)), f) << name;
    FormulaRef core = desugar(f);
    EXPECT_EQ(parse(format(*core)), core) << name;
  }
}

TEST(Parser, NumbersRoundTrip) {
  for (double v : {0.1, 1e-300, 123456789.125, 0.3, 2.0 / 3.0, 1e21, -0.5}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
}
