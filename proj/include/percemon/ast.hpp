#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace percemon {

/// Position in specification text (1-based). Zero line means "synthesized".
struct SourceLoc {
  int line = 0;
  int column = 0;
};

/// A variable occurrence. Locations are diagnostic metadata only and do not
/// take part in structural equality.
struct VarRef {
  std::string name;
  SourceLoc loc;

  friend bool operator==(const VarRef &a, const VarRef &b) { return a.name == b.name; }
};

/// Immutable shared pointer with deep equality; the AST's child edge type.
template <class T> class Ref {
public:
  Ref(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}

  const T &operator*() const { return *ptr_; }
  const T *operator->() const { return ptr_.get(); }
  const T *get() const { return ptr_.get(); }

  friend bool operator==(const Ref &a, const Ref &b) {
    return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_;
  }

private:
  std::shared_ptr<const T> ptr_;
};

enum class Cmp { Lt, Le, Gt, Ge, Eq, Ne };

enum class RefPoint { LM, RM, TM, BM, CT };

enum class Axis { Lat, Lon };

/// Which way round a clock constraint was written: `x - C_TIME` (pinned minus
/// current) or `C_TIME - x` (current minus pinned).
enum class ClockOrder { PinnedMinusCurrent, CurrentMinusPinned };

bool compare(double lhs, Cmp cmp, double rhs);
const char *to_string(Cmp cmp);
const char *to_string(RefPoint crt);

// ---------------------------------------------------------------------------
// Spatial terms

struct SpatialTerm;
using SpatialRef = Ref<SpatialTerm>;

namespace sp {
struct Empty {
  bool operator==(const Empty &) const = default;
};
struct Universe {
  bool operator==(const Universe &) const = default;
};
struct BBoxOf {
  VarRef var;
  bool operator==(const BBoxOf &) const = default;
};
struct Complement {
  SpatialRef arg;
  bool operator==(const Complement &) const = default;
};
struct Union {
  SpatialRef lhs, rhs;
  bool operator==(const Union &) const = default;
};
/// Sugar; removed by desugar().
struct Intersection {
  SpatialRef lhs, rhs;
  bool operator==(const Intersection &) const = default;
};
} // namespace sp

struct SpatialTerm {
  using Node = std::variant<sp::Empty, sp::Universe, sp::BBoxOf, sp::Complement, sp::Union,
                            sp::Intersection>;
  Node node;

  bool operator==(const SpatialTerm &) const = default;
};

struct OffsetTerm {
  Axis axis = Axis::Lat;
  VarRef var;
  RefPoint crt = RefPoint::CT;
  bool operator==(const OffsetTerm &) const = default;
};

// ---------------------------------------------------------------------------
// Formulas

struct Formula;
using FormulaRef = Ref<Formula>;

namespace fm {
struct True {
  bool operator==(const True &) const = default;
};
struct Not {
  FormulaRef arg;
  bool operator==(const Not &) const = default;
};
struct Or {
  FormulaRef lhs, rhs;
  bool operator==(const Or &) const = default;
};
struct Next {
  FormulaRef arg;
  bool operator==(const Next &) const = default;
};
struct Prev {
  FormulaRef arg;
  bool operator==(const Prev &) const = default;
};
struct Until {
  FormulaRef lhs, rhs;
  bool operator==(const Until &) const = default;
};
struct Since {
  FormulaRef lhs, rhs;
  bool operator==(const Since &) const = default;
};
struct Exists {
  std::vector<VarRef> vars;
  FormulaRef body;
  bool operator==(const Exists &) const = default;
};
/// `pin (x, f) { body }`; either variable may be omitted.
struct Freeze {
  std::optional<VarRef> time_var;
  std::optional<VarRef> frame_var;
  FormulaRef body;
  bool operator==(const Freeze &) const = default;
};
struct TimeConstraint {
  VarRef var;
  ClockOrder order = ClockOrder::PinnedMinusCurrent;
  Cmp cmp = Cmp::Le;
  double bound = 0.0;
  bool operator==(const TimeConstraint &) const = default;
};
struct FrameConstraint {
  VarRef var;
  ClockOrder order = ClockOrder::PinnedMinusCurrent;
  Cmp cmp = Cmp::Le;
  std::int64_t bound = 0;
  bool operator==(const FrameConstraint &) const = default;
};
struct ClassEqConst {
  VarRef var;
  std::string label;
  bool operator==(const ClassEqConst &) const = default;
};
struct ClassEqVar {
  VarRef lhs, rhs;
  bool operator==(const ClassEqVar &) const = default;
};
struct ProbCmpConst {
  VarRef var;
  Cmp cmp = Cmp::Ge;
  double bound = 0.0;
  bool operator==(const ProbCmpConst &) const = default;
};
/// prob(lhs) / prob(rhs) ~ ratio
struct ProbCmpRatio {
  VarRef lhs;
  Cmp cmp = Cmp::Ge;
  double ratio = 0.0;
  VarRef rhs;
  bool operator==(const ProbCmpRatio &) const = default;
};
struct IdEq {
  VarRef lhs, rhs;
  bool operator==(const IdEq &) const = default;
};
struct IdNeq {
  VarRef lhs, rhs;
  bool operator==(const IdNeq &) const = default;
};
struct SpatialExists {
  SpatialRef term;
  bool operator==(const SpatialExists &) const = default;
};
struct AreaCmpConst {
  SpatialRef term;
  Cmp cmp = Cmp::Ge;
  double bound = 0.0;
  bool operator==(const AreaCmpConst &) const = default;
};
/// area(lhs) / area(rhs) ~ ratio
struct AreaCmpRatio {
  SpatialRef lhs;
  Cmp cmp = Cmp::Ge;
  double ratio = 0.0;
  SpatialRef rhs;
  bool operator==(const AreaCmpRatio &) const = default;
};
struct EDCmp {
  VarRef lhs;
  RefPoint lhs_crt = RefPoint::CT;
  VarRef rhs;
  RefPoint rhs_crt = RefPoint::CT;
  Cmp cmp = Cmp::Ge;
  double bound = 0.0;
  bool operator==(const EDCmp &) const = default;
};
struct OffsetCmpConst {
  OffsetTerm term;
  Cmp cmp = Cmp::Ge;
  double bound = 0.0;
  bool operator==(const OffsetCmpConst &) const = default;
};
/// lhs / rhs ~ ratio
struct OffsetCmpRatio {
  OffsetTerm lhs;
  Cmp cmp = Cmp::Ge;
  double ratio = 0.0;
  OffsetTerm rhs;
  bool operator==(const OffsetCmpRatio &) const = default;
};

// Derived operators. desugar() rewrites these into the core nodes above.
struct And {
  FormulaRef lhs, rhs;
  bool operator==(const And &) const = default;
};
struct Implies {
  FormulaRef lhs, rhs;
  bool operator==(const Implies &) const = default;
};
struct Forall {
  std::vector<VarRef> vars;
  FormulaRef body;
  bool operator==(const Forall &) const = default;
};
struct Always {
  FormulaRef arg;
  bool operator==(const Always &) const = default;
};
struct Eventually {
  FormulaRef arg;
  bool operator==(const Eventually &) const = default;
};
struct Once {
  FormulaRef arg;
  bool operator==(const Once &) const = default;
};
struct Holds {
  FormulaRef arg;
  bool operator==(const Holds &) const = default;
};
} // namespace fm

struct Formula {
  using Node =
      std::variant<fm::True, fm::Not, fm::Or, fm::Next, fm::Prev, fm::Until, fm::Since,
                   fm::Exists, fm::Freeze, fm::TimeConstraint, fm::FrameConstraint,
                   fm::ClassEqConst, fm::ClassEqVar, fm::ProbCmpConst, fm::ProbCmpRatio, fm::IdEq,
                   fm::IdNeq, fm::SpatialExists, fm::AreaCmpConst, fm::AreaCmpRatio, fm::EDCmp,
                   fm::OffsetCmpConst, fm::OffsetCmpRatio, fm::And, fm::Implies, fm::Forall,
                   fm::Always, fm::Eventually, fm::Once, fm::Holds>;
  Node node;

  template <class T> bool is() const { return std::holds_alternative<T>(node); }
  template <class T> const T *as() const { return std::get_if<T>(&node); }

  bool operator==(const Formula &) const = default;
};

// Construction helpers; used by desugar, builtins and tests.
inline FormulaRef make(Formula::Node node) { return Formula{std::move(node)}; }
inline SpatialRef make_spatial(SpatialTerm::Node node) { return SpatialTerm{std::move(node)}; }

inline FormulaRef truth() { return make(fm::True{}); }
inline FormulaRef negate(FormulaRef f) { return make(fm::Not{std::move(f)}); }
inline FormulaRef disj(FormulaRef a, FormulaRef b) {
  return make(fm::Or{std::move(a), std::move(b)});
}
inline FormulaRef conj(FormulaRef a, FormulaRef b) {
  return make(fm::And{std::move(a), std::move(b)});
}
inline FormulaRef implies(FormulaRef a, FormulaRef b) {
  return make(fm::Implies{std::move(a), std::move(b)});
}
inline FormulaRef next(FormulaRef f) { return make(fm::Next{std::move(f)}); }
inline FormulaRef prev(FormulaRef f) { return make(fm::Prev{std::move(f)}); }
inline FormulaRef until(FormulaRef a, FormulaRef b) {
  return make(fm::Until{std::move(a), std::move(b)});
}
inline FormulaRef since(FormulaRef a, FormulaRef b) {
  return make(fm::Since{std::move(a), std::move(b)});
}
inline VarRef var(std::string name) { return VarRef{std::move(name), {}}; }

/// True iff the formula (including nested spatial terms) uses only the core
/// node kinds, i.e. no And/Implies/Forall/Always/Eventually/Once/Holds and no
/// spatial Intersection.
bool is_core(const Formula &f);

/// Number of nodes in the formula tree, spatial terms included.
std::size_t node_count(const Formula &f);

} // namespace percemon
