#include "percemon/analysis.hpp"

#include <algorithm>
#include <type_traits>

namespace percemon {

// ---------------------------------------------------------------------------
// desugar

namespace {

SpatialRef desugar_spatial(const SpatialRef &t) {
  return std::visit(
      [&](const auto &n) -> SpatialRef {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, sp::Complement>) {
          return make_spatial(sp::Complement{desugar_spatial(n.arg)});
        } else if constexpr (std::is_same_v<T, sp::Union>) {
          return make_spatial(sp::Union{desugar_spatial(n.lhs), desugar_spatial(n.rhs)});
        } else if constexpr (std::is_same_v<T, sp::Intersection>) {
          auto comp = [](SpatialRef x) { return make_spatial(sp::Complement{std::move(x)}); };
          return comp(make_spatial(
              sp::Union{comp(desugar_spatial(n.lhs)), comp(desugar_spatial(n.rhs))}));
        } else {
          return t;
        }
      },
      t->node);
}

} // namespace

FormulaRef desugar(const FormulaRef &f) {
  return std::visit(
      [&](const auto &n) -> FormulaRef {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, fm::Not>) {
          return negate(desugar(n.arg));
        } else if constexpr (std::is_same_v<T, fm::Or>) {
          return disj(desugar(n.lhs), desugar(n.rhs));
        } else if constexpr (std::is_same_v<T, fm::Next>) {
          return next(desugar(n.arg));
        } else if constexpr (std::is_same_v<T, fm::Prev>) {
          return prev(desugar(n.arg));
        } else if constexpr (std::is_same_v<T, fm::Until>) {
          return until(desugar(n.lhs), desugar(n.rhs));
        } else if constexpr (std::is_same_v<T, fm::Since>) {
          return since(desugar(n.lhs), desugar(n.rhs));
        } else if constexpr (std::is_same_v<T, fm::Exists>) {
          return make(fm::Exists{n.vars, desugar(n.body)});
        } else if constexpr (std::is_same_v<T, fm::Freeze>) {
          return make(fm::Freeze{n.time_var, n.frame_var, desugar(n.body)});
        } else if constexpr (std::is_same_v<T, fm::SpatialExists>) {
          return make(fm::SpatialExists{desugar_spatial(n.term)});
        } else if constexpr (std::is_same_v<T, fm::AreaCmpConst>) {
          return make(fm::AreaCmpConst{desugar_spatial(n.term), n.cmp, n.bound});
        } else if constexpr (std::is_same_v<T, fm::AreaCmpRatio>) {
          return make(
              fm::AreaCmpRatio{desugar_spatial(n.lhs), n.cmp, n.ratio, desugar_spatial(n.rhs)});
        } else if constexpr (std::is_same_v<T, fm::And>) {
          return negate(disj(negate(desugar(n.lhs)), negate(desugar(n.rhs))));
        } else if constexpr (std::is_same_v<T, fm::Implies>) {
          return disj(negate(desugar(n.lhs)), desugar(n.rhs));
        } else if constexpr (std::is_same_v<T, fm::Forall>) {
          return negate(make(fm::Exists{n.vars, negate(desugar(n.body))}));
        } else if constexpr (std::is_same_v<T, fm::Eventually>) {
          return until(truth(), desugar(n.arg));
        } else if constexpr (std::is_same_v<T, fm::Always>) {
          return negate(until(truth(), negate(desugar(n.arg))));
        } else if constexpr (std::is_same_v<T, fm::Once>) {
          return since(truth(), desugar(n.arg));
        } else if constexpr (std::is_same_v<T, fm::Holds>) {
          return negate(since(truth(), negate(desugar(n.arg))));
        } else {
          return f;
        }
      },
      f->node);
}

// ---------------------------------------------------------------------------
// check_bindings

namespace {

enum class VarKind { Object, Time, Frame };

const char *kind_name(VarKind k) {
  switch (k) {
  case VarKind::Object:
    return "object";
  case VarKind::Time:
    return "time";
  case VarKind::Frame:
    return "frame";
  }
  return "?";
}

class BindingChecker {
public:
  std::vector<BindError> errors;

  void check(const Formula &f) {
    std::visit([&](const auto &n) { visit(n); }, f.node);
  }

private:
  struct Binding {
    std::string name;
    VarKind kind;
  };
  std::vector<Binding> scope_;

  void use(const VarRef &v, VarKind expected) {
    auto it = std::find_if(scope_.rbegin(), scope_.rend(),
                           [&](const Binding &b) { return b.name == v.name; });
    if (it == scope_.rend()) {
      errors.push_back({BindError::Kind::UnboundVariable, v.name, v.loc,
                        "unbound variable '" + v.name + "'"});
    } else if (it->kind != expected) {
      errors.push_back({BindError::Kind::KindMismatch, v.name, v.loc,
                        "variable '" + v.name + "' is a " + kind_name(it->kind) +
                            " variable but is used as a " + kind_name(expected) + " variable"});
    }
  }

  void bind(const VarRef &v, VarKind kind) {
    bool taken = std::any_of(scope_.begin(), scope_.end(),
                             [&](const Binding &b) { return b.name == v.name; });
    if (taken) {
      errors.push_back({BindError::Kind::Shadowing, v.name, v.loc,
                        "variable '" + v.name + "' is already bound in this scope"});
    }
    scope_.push_back({v.name, kind});
  }

  void spatial(const SpatialTerm &t) {
    std::visit(
        [&](const auto &n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, sp::BBoxOf>) {
            use(n.var, VarKind::Object);
          } else if constexpr (std::is_same_v<T, sp::Complement>) {
            spatial(*n.arg);
          } else if constexpr (std::is_same_v<T, sp::Union> ||
                               std::is_same_v<T, sp::Intersection>) {
            spatial(*n.lhs);
            spatial(*n.rhs);
          }
        },
        t.node);
  }

  template <class T> void visit(const T &n) {
    if constexpr (std::is_same_v<T, fm::Exists> || std::is_same_v<T, fm::Forall>) {
      std::size_t mark = scope_.size();
      for (const auto &v : n.vars) {
        bind(v, VarKind::Object);
      }
      check(*n.body);
      scope_.resize(mark);
    } else if constexpr (std::is_same_v<T, fm::Freeze>) {
      std::size_t mark = scope_.size();
      if (n.time_var) {
        bind(*n.time_var, VarKind::Time);
      }
      if (n.frame_var) {
        bind(*n.frame_var, VarKind::Frame);
      }
      check(*n.body);
      scope_.resize(mark);
    } else if constexpr (requires { n.arg; }) {
      check(*n.arg);
    } else if constexpr (std::is_same_v<T, fm::Or> || std::is_same_v<T, fm::And> ||
                         std::is_same_v<T, fm::Implies> || std::is_same_v<T, fm::Until> ||
                         std::is_same_v<T, fm::Since>) {
      check(*n.lhs);
      check(*n.rhs);
    } else if constexpr (std::is_same_v<T, fm::TimeConstraint>) {
      use(n.var, VarKind::Time);
    } else if constexpr (std::is_same_v<T, fm::FrameConstraint>) {
      use(n.var, VarKind::Frame);
    } else if constexpr (std::is_same_v<T, fm::ClassEqConst> ||
                         std::is_same_v<T, fm::ProbCmpConst>) {
      use(n.var, VarKind::Object);
    } else if constexpr (std::is_same_v<T, fm::ClassEqVar> || std::is_same_v<T, fm::IdEq> ||
                         std::is_same_v<T, fm::IdNeq> || std::is_same_v<T, fm::ProbCmpRatio> ||
                         std::is_same_v<T, fm::EDCmp>) {
      use(n.lhs, VarKind::Object);
      use(n.rhs, VarKind::Object);
    } else if constexpr (std::is_same_v<T, fm::SpatialExists> ||
                         std::is_same_v<T, fm::AreaCmpConst>) {
      spatial(*n.term);
    } else if constexpr (std::is_same_v<T, fm::AreaCmpRatio>) {
      spatial(*n.lhs);
      spatial(*n.rhs);
    } else if constexpr (std::is_same_v<T, fm::OffsetCmpConst>) {
      use(n.term.var, VarKind::Object);
    } else if constexpr (std::is_same_v<T, fm::OffsetCmpRatio>) {
      use(n.lhs.var, VarKind::Object);
      use(n.rhs.var, VarKind::Object);
    } else {
      static_assert(std::is_same_v<T, fm::True>);
    }
  }
};

} // namespace

std::vector<BindError> check_bindings(const Formula &f) {
  BindingChecker checker;
  checker.check(f);
  return std::move(checker.errors);
}

std::string describe(const BindError &e) {
  std::string where = e.loc.line > 0
                          ? std::to_string(e.loc.line) + ":" + std::to_string(e.loc.column) + ": "
                          : std::string();
  const char *kind = e.kind == BindError::Kind::UnboundVariable ? "UnboundVariable"
                     : e.kind == BindError::Kind::KindMismatch  ? "KindMismatch"
                                                                : "Shadowing";
  return where + kind + "(" + e.name + "): " + e.message;
}

// ---------------------------------------------------------------------------
// compute_bounds

std::string to_string(const FrameBounds &b) {
  auto show = [](const std::optional<std::size_t> &v) {
    return v ? std::to_string(*v) : std::string("unbounded");
  };
  return "history=" + show(b.history) + " horizon=" + show(b.horizon);
}

namespace {

using Bound = std::optional<std::int64_t>;

Bound plus(Bound a, std::int64_t k) { return a ? Bound(*a + k) : std::nullopt; }
Bound max_of(Bound a, Bound b) { return a && b ? Bound(std::max(*a, *b)) : std::nullopt; }

struct Span {
  Bound history;
  Bound horizon;
};

Span join(const Span &a, const Span &b) {
  return {max_of(a.history, b.history), max_of(a.horizon, b.horizon)};
}

// Offset (current evaluation frame minus pin frame) of an enclosing frame
// variable, as a closed interval; nullopt ends are infinite.
struct Offset {
  std::string var;
  Bound lo;
  Bound hi;
};
using Context = std::vector<Offset>;

Context shifted(Context ctx, std::int64_t delta) {
  for (auto &o : ctx) {
    o.lo = plus(o.lo, delta);
    o.hi = plus(o.hi, delta);
  }
  return ctx;
}

const Offset *lookup(const Context &ctx, const std::string &name) {
  for (const auto &o : ctx) {
    if (o.var == name) {
      return &o;
    }
  }
  return nullptr;
}

Cmp negated(Cmp c) {
  switch (c) {
  case Cmp::Lt:
    return Cmp::Ge;
  case Cmp::Le:
    return Cmp::Gt;
  case Cmp::Gt:
    return Cmp::Le;
  case Cmp::Ge:
    return Cmp::Lt;
  case Cmp::Eq:
    return Cmp::Ne;
  case Cmp::Ne:
    return Cmp::Eq;
  }
  return c;
}

// Frame constraints that must hold whenever `f` holds.
void implied_guards(const Formula &f, bool positive, std::vector<fm::FrameConstraint> &out) {
  if (const auto *c = f.as<fm::FrameConstraint>()) {
    fm::FrameConstraint g = *c;
    if (!positive) {
      g.cmp = negated(g.cmp);
    }
    out.push_back(g);
  } else if (const auto *n = f.as<fm::Not>()) {
    implied_guards(*n->arg, !positive, out);
  } else if (const auto *o = f.as<fm::Or>(); o && !positive) {
    // !(a || b) == !a && !b
    implied_guards(*o->lhs, false, out);
    implied_guards(*o->rhs, false, out);
  } else if (const auto *e = f.as<fm::Exists>(); e && positive) {
    implied_guards(*e->body, true, out);
  } else if (const auto *z = f.as<fm::Freeze>()) {
    implied_guards(*z->body, positive, out);
  }
}

// Bounds on D = current - pin implied by a constraint.
Bound upper_on_elapsed(const fm::FrameConstraint &c) {
  std::int64_t n = c.bound;
  if (c.order == ClockOrder::CurrentMinusPinned) {
    switch (c.cmp) {
    case Cmp::Le:
    case Cmp::Eq:
      return n;
    case Cmp::Lt:
      return n - 1;
    default:
      return std::nullopt;
    }
  }
  switch (c.cmp) {
  case Cmp::Ge:
  case Cmp::Eq:
    return -n;
  case Cmp::Gt:
    return -n - 1;
  default:
    return std::nullopt;
  }
}

Bound lower_on_elapsed(const fm::FrameConstraint &c) {
  std::int64_t n = c.bound;
  if (c.order == ClockOrder::CurrentMinusPinned) {
    switch (c.cmp) {
    case Cmp::Ge:
    case Cmp::Eq:
      return n;
    case Cmp::Gt:
      return n + 1;
    default:
      return std::nullopt;
    }
  }
  switch (c.cmp) {
  case Cmp::Le:
  case Cmp::Eq:
    return -n;
  case Cmp::Lt:
    return -n + 1;
  default:
    return std::nullopt;
  }
}

std::vector<fm::FrameConstraint> guards_of(const Formula &a, const Formula &b) {
  std::vector<fm::FrameConstraint> gs;
  implied_guards(a, true, gs);
  implied_guards(b, true, gs);
  return gs;
}

// How many frames forward an Until evaluated here can range.
Bound until_reach(const Formula &a, const Formula &b, const Context &ctx) {
  Bound best;
  for (const auto &g : guards_of(a, b)) {
    const Offset *o = lookup(ctx, g.var.name);
    Bound n = upper_on_elapsed(g);
    if (o && o->lo && n) {
      std::int64_t reach = std::max<std::int64_t>(0, *n - *o->lo);
      best = best ? std::min(*best, reach) : reach;
    }
  }
  return best;
}

// How many frames backward a Since evaluated here can range.
Bound since_reach(const Formula &a, const Formula &b, const Context &ctx) {
  Bound best;
  for (const auto &g : guards_of(a, b)) {
    const Offset *o = lookup(ctx, g.var.name);
    Bound n = lower_on_elapsed(g);
    if (o && o->hi && n) {
      std::int64_t reach = std::max<std::int64_t>(0, *o->hi - *n);
      best = best ? std::min(*best, reach) : reach;
    }
  }
  return best;
}

Span bounds(const Formula &f, const Context &ctx) {
  if (const auto *n = f.as<fm::Not>()) {
    return bounds(*n->arg, ctx);
  }
  if (const auto *o = f.as<fm::Or>()) {
    return join(bounds(*o->lhs, ctx), bounds(*o->rhs, ctx));
  }
  if (const auto *n = f.as<fm::Next>()) {
    Span s = bounds(*n->arg, shifted(ctx, 1));
    return {s.history ? Bound(std::max<std::int64_t>(*s.history - 1, 0)) : std::nullopt,
            plus(s.horizon, 1)};
  }
  if (const auto *p = f.as<fm::Prev>()) {
    Span s = bounds(*p->arg, shifted(ctx, -1));
    return {plus(s.history, 1),
            s.horizon ? Bound(std::max<std::int64_t>(*s.horizon - 1, 0)) : std::nullopt};
  }
  if (const auto *u = f.as<fm::Until>()) {
    Bound reach = until_reach(*u->lhs, *u->rhs, ctx);
    Context inner = ctx;
    for (auto &o : inner) {
      o.hi = reach ? plus(o.hi, *reach) : std::nullopt;
    }
    Span s = join(bounds(*u->lhs, inner), bounds(*u->rhs, inner));
    return {s.history, reach ? plus(s.horizon, *reach) : std::nullopt};
  }
  if (const auto *s = f.as<fm::Since>()) {
    Bound reach = since_reach(*s->lhs, *s->rhs, ctx);
    Context inner = ctx;
    for (auto &o : inner) {
      o.lo = reach ? plus(o.lo, -*reach) : std::nullopt;
    }
    Span b = join(bounds(*s->lhs, inner), bounds(*s->rhs, inner));
    return {reach ? plus(b.history, *reach) : std::nullopt, b.horizon};
  }
  if (const auto *e = f.as<fm::Exists>()) {
    return bounds(*e->body, ctx);
  }
  if (const auto *z = f.as<fm::Freeze>()) {
    if (!z->frame_var) {
      return bounds(*z->body, ctx);
    }
    Context inner = ctx;
    inner.push_back({z->frame_var->name, 0, 0});
    return bounds(*z->body, inner);
  }
  return {0, 0};
}

} // namespace

FrameBounds compute_bounds(const FormulaRef &f) {
  Span s = bounds(*desugar(f), {});
  auto cast = [](Bound b) -> std::optional<std::size_t> {
    return b ? std::optional<std::size_t>(static_cast<std::size_t>(*b)) : std::nullopt;
  };
  return {cast(s.history), cast(s.horizon)};
}

} // namespace percemon
