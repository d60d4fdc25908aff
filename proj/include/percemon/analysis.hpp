#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "percemon/ast.hpp"

namespace percemon {

/// Rewrite derived operators into the core grammar:
///   a && b       -> !(!a || !b)          a -> b        -> !a || b
///   eventually p -> true until p         always p      -> !(true until !p)
///   once p       -> true since p         holds p       -> !(true since !p)
///   forall V @ p -> !(exists V @ !p)     A & B (space) -> ~(~A | ~B)
/// Idempotent.
FormulaRef desugar(const FormulaRef &f);

struct BindError {
  enum class Kind { UnboundVariable, KindMismatch, Shadowing };

  Kind kind;
  std::string name;
  SourceLoc loc;
  std::string message;
};

/// Every variable use must be in scope of a binder of the right kind; no
/// binder may reuse a name that is already in scope.
std::vector<BindError> check_bindings(const Formula &f);

std::string describe(const BindError &e);

/// Number of past (history) and future (horizon) frames a verdict depends on.
/// `std::nullopt` means unbounded.
struct FrameBounds {
  std::optional<std::size_t> history;
  std::optional<std::size_t> horizon;

  bool finite() const { return history.has_value() && horizon.has_value(); }
  bool operator==(const FrameBounds &) const = default;
};

std::string to_string(const FrameBounds &b);

/// Static history/horizon analysis.
///
/// Atoms need no neighbouring frames; Next/Prev shift the window by one;
/// Or/Not/Exists/Freeze take the pointwise maximum of their operands. An
/// Until has an unbounded horizon (a Since an unbounded history) unless one
/// of its operands implies a frame constraint on an enclosing pin that caps
/// how far the operator can range, e.g.
///
///   pin (_, f) { always (C_FRAME - f <= 3 -> p) }      horizon 3
///   pin (_, f) { holds (f - C_FRAME < 5 -> p) }        history 4
///
/// Guard recognition is syntactic: the constraint must be reachable through
/// conjunctions, double negations, quantifiers and pins. Time constraints
/// never bound anything.
FrameBounds compute_bounds(const FormulaRef &f);

} // namespace percemon
