#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "percemon/ast.hpp"
#include "percemon/spatial.hpp"
#include "percemon/trace.hpp"

namespace percemon {

/// Raised when the evaluator is handed something static checks should have
/// rejected (unbound variables, a pin placeholder used as a variable).
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// An object variable's assignment: the tracker id, plus the box the object
/// had in the frame where the quantifier bound it. Geometry (bbox, lat, lon,
/// dist) reads the captured box; class and prob look the id up in the frame
/// being evaluated.
struct ObjectBinding {
  ObjectId id = 0;
  BoundingBox bbox;
};

/// Variable environment. Later entries shadow earlier ones, though static
/// checks forbid shadowing in well-formed formulas.
struct Env {
  std::vector<std::pair<std::string, double>> time_pins;
  std::vector<std::pair<std::string, std::size_t>> frame_pins;
  std::vector<std::pair<std::string, ObjectBinding>> objects;

  double time_pin(const std::string &name) const;
  std::size_t frame_pin(const std::string &name) const;
  const ObjectBinding &object(const std::string &name) const;
};

/// Evaluation point. `trace` is the visible window; frames outside it do not
/// exist as far as Next/Prev/Until/Since are concerned.
struct EvalContext {
  std::span<const Frame> trace;
  std::size_t index = 0;

  const Frame &current() const { return trace[index]; }
  Universe universe() const { return {current().width, current().height}; }
};

struct EvalStats {
  /// Quantifier tuples visited.
  std::uint64_t assignments = 0;
  /// Ratio atoms that hit a zero denominator (and evaluated to false).
  std::uint64_t zero_denominators = 0;
};

/// Boolean semantics of `f` at `ctx.index`. Derived operators are evaluated
/// directly, so `f` need not be desugared; it must pass check_bindings.
bool eval(const Formula &f, const EvalContext &ctx, const Env &env = {},
          EvalStats *stats = nullptr);

bool eval_time_constraint(const fm::TimeConstraint &c, const EvalContext &ctx, const Env &env);
bool eval_frame_constraint(const fm::FrameConstraint &c, const EvalContext &ctx, const Env &env);

/// Class, prob and id (in)equality atoms. Lookups of an id missing from the
/// current frame make the atom false.
bool eval_object_atom(const Formula &atom, const EvalContext &ctx, const Env &env,
                      EvalStats *stats = nullptr);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

Point ref_point(const BoundingBox &b, RefPoint crt);

/// lat = x and lon = y of the reference point: distances from the left and
/// top image edges respectively.
double offset_value(const OffsetTerm &term, const Env &env);
double euclidean_distance(const fm::EDCmp &atom, const Env &env);

/// Every assignment of frame objects to `var_count` variables, repetition
/// allowed, lexicographic over ascending ids. `visit` returns true to stop.
void for_each_assignment(std::size_t var_count, const Frame &frame,
                         const std::function<bool(std::span<const ObjectId>)> &visit);

std::vector<std::vector<ObjectId>> quantifier_assignments(std::size_t var_count,
                                                          const Frame &frame);

Region eval_spatial(const SpatialTerm &term, const EvalContext &ctx, const Env &env);

/// Offline verdict at every index of `trace`.
std::vector<bool> evaluate_trace(const Formula &f, std::span<const Frame> trace,
                                 EvalStats *stats = nullptr);

} // namespace percemon
