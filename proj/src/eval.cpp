#include "percemon/eval.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

namespace percemon {

namespace {

template <class T>
const T &find_binding(const std::vector<std::pair<std::string, T>> &entries,
                      const std::string &name, const char *what) {
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    if (it->first == name) {
      return it->second;
    }
  }
  throw ContractViolation(std::string("unbound ") + what + " variable '" + name + "'");
}

} // namespace

double Env::time_pin(const std::string &name) const {
  return find_binding(time_pins, name, "time");
}

std::size_t Env::frame_pin(const std::string &name) const {
  return find_binding(frame_pins, name, "frame");
}

const ObjectBinding &Env::object(const std::string &name) const {
  return find_binding(objects, name, "object");
}

bool eval_time_constraint(const fm::TimeConstraint &c, const EvalContext &ctx, const Env &env) {
  double pinned = env.time_pin(c.var.name);
  double now = ctx.current().timestamp;
  double diff = c.order == ClockOrder::PinnedMinusCurrent ? pinned - now : now - pinned;
  return compare(diff, c.cmp, c.bound);
}

bool eval_frame_constraint(const fm::FrameConstraint &c, const EvalContext &ctx,
                           const Env &env) {
  auto pinned = static_cast<std::int64_t>(env.frame_pin(c.var.name));
  auto now = static_cast<std::int64_t>(ctx.index);
  std::int64_t diff = c.order == ClockOrder::PinnedMinusCurrent ? pinned - now : now - pinned;
  switch (c.cmp) {
  case Cmp::Lt:
    return diff < c.bound;
  case Cmp::Le:
    return diff <= c.bound;
  case Cmp::Gt:
    return diff > c.bound;
  case Cmp::Ge:
    return diff >= c.bound;
  case Cmp::Eq:
    return diff == c.bound;
  case Cmp::Ne:
    return diff != c.bound;
  }
  return false;
}

namespace {

const DetectedObject *resolve(const VarRef &v, const EvalContext &ctx, const Env &env) {
  return ctx.current().find(env.object(v.name).id);
}

bool ratio_holds(double num, double den, Cmp cmp, double ratio, EvalStats *stats) {
  if (den == 0.0) {
    if (stats) {
      ++stats->zero_denominators;
    }
    return false;
  }
  return compare(num / den, cmp, ratio);
}

} // namespace

bool eval_object_atom(const Formula &atom, const EvalContext &ctx, const Env &env,
                      EvalStats *stats) {
  if (const auto *a = atom.as<fm::IdEq>()) {
    return env.object(a->lhs.name).id == env.object(a->rhs.name).id;
  }
  if (const auto *a = atom.as<fm::IdNeq>()) {
    return env.object(a->lhs.name).id != env.object(a->rhs.name).id;
  }
  if (const auto *a = atom.as<fm::ClassEqConst>()) {
    const DetectedObject *obj = resolve(a->var, ctx, env);
    return obj && obj->class_label == a->label;
  }
  if (const auto *a = atom.as<fm::ClassEqVar>()) {
    const DetectedObject *lhs = resolve(a->lhs, ctx, env);
    const DetectedObject *rhs = resolve(a->rhs, ctx, env);
    return lhs && rhs && lhs->class_label == rhs->class_label;
  }
  if (const auto *a = atom.as<fm::ProbCmpConst>()) {
    const DetectedObject *obj = resolve(a->var, ctx, env);
    return obj && compare(obj->confidence, a->cmp, a->bound);
  }
  if (const auto *a = atom.as<fm::ProbCmpRatio>()) {
    const DetectedObject *lhs = resolve(a->lhs, ctx, env);
    const DetectedObject *rhs = resolve(a->rhs, ctx, env);
    return lhs && rhs && ratio_holds(lhs->confidence, rhs->confidence, a->cmp, a->ratio, stats);
  }
  throw ContractViolation("eval_object_atom: not an object atom");
}

Point ref_point(const BoundingBox &b, RefPoint crt) {
  double mid_x = (b.xmin + b.xmax) / 2.0;
  double mid_y = (b.ymin + b.ymax) / 2.0;
  switch (crt) {
  case RefPoint::LM:
    return {b.xmin, mid_y};
  case RefPoint::RM:
    return {b.xmax, mid_y};
  case RefPoint::TM:
    return {mid_x, b.ymin};
  case RefPoint::BM:
    return {mid_x, b.ymax};
  case RefPoint::CT:
    return {mid_x, mid_y};
  }
  return {mid_x, mid_y};
}

double offset_value(const OffsetTerm &term, const Env &env) {
  Point p = ref_point(env.object(term.var.name).bbox, term.crt);
  return term.axis == Axis::Lat ? p.x : p.y;
}

double euclidean_distance(const fm::EDCmp &atom, const Env &env) {
  Point a = ref_point(env.object(atom.lhs.name).bbox, atom.lhs_crt);
  Point b = ref_point(env.object(atom.rhs.name).bbox, atom.rhs_crt);
  return std::hypot(a.x - b.x, a.y - b.y);
}

void for_each_assignment(std::size_t var_count, const Frame &frame,
                         const std::function<bool(std::span<const ObjectId>)> &visit) {
  if (var_count == 0 || frame.objects.empty()) {
    return;
  }
  std::vector<ObjectId> ids;
  ids.reserve(frame.objects.size());
  for (const auto &entry : frame.objects) {
    ids.push_back(entry.first);
  }
  std::vector<std::size_t> digits(var_count, 0);
  std::vector<ObjectId> tuple(var_count, ids[0]);
  while (true) {
    if (visit(tuple)) {
      return;
    }
    // Odometer increment; the last variable varies fastest.
    std::size_t pos = var_count;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < ids.size()) {
        tuple[pos] = ids[digits[pos]];
        break;
      }
      digits[pos] = 0;
      tuple[pos] = ids[0];
      if (pos == 0) {
        return;
      }
    }
  }
}

std::vector<std::vector<ObjectId>> quantifier_assignments(std::size_t var_count,
                                                          const Frame &frame) {
  std::vector<std::vector<ObjectId>> out;
  for_each_assignment(var_count, frame, [&](std::span<const ObjectId> t) {
    out.emplace_back(t.begin(), t.end());
    return false;
  });
  return out;
}

Region eval_spatial(const SpatialTerm &term, const EvalContext &ctx, const Env &env) {
  Universe u = ctx.universe();
  return std::visit(
      [&](const auto &n) -> Region {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, sp::Empty>) {
          return Region::empty(u);
        } else if constexpr (std::is_same_v<T, sp::Universe>) {
          return Region::full(u);
        } else if constexpr (std::is_same_v<T, sp::BBoxOf>) {
          return Region::from_box(env.object(n.var.name).bbox, u);
        } else if constexpr (std::is_same_v<T, sp::Complement>) {
          return complement(eval_spatial(*n.arg, ctx, env), u);
        } else if constexpr (std::is_same_v<T, sp::Union>) {
          return unite(eval_spatial(*n.lhs, ctx, env), eval_spatial(*n.rhs, ctx, env));
        } else {
          return intersect(eval_spatial(*n.lhs, ctx, env), eval_spatial(*n.rhs, ctx, env));
        }
      },
      term.node);
}

namespace {

class Evaluator {
public:
  Evaluator(std::span<const Frame> trace, Env env, EvalStats *stats)
      : trace_(trace), env_(std::move(env)), stats_(stats) {}

  bool at(const Formula &f, std::size_t i) {
    return std::visit([&](const auto &n) { return node(n, f, i); }, f.node);
  }

private:
  EvalContext ctx(std::size_t i) const { return {trace_, i}; }

  // Shared loop for Until/Since and their derived forms. Walks j away from i
  // in direction `step`; stops with false at the first j where `hold` fails.
  template <class Hold, class Goal> bool sweep(std::size_t i, int step, Hold hold, Goal goal) {
    for (std::int64_t j = static_cast<std::int64_t>(i);
         j >= 0 && j < static_cast<std::int64_t>(trace_.size()); j += step) {
      auto k = static_cast<std::size_t>(j);
      if (!hold(k)) {
        return false;
      }
      if (goal(k)) {
        return true;
      }
    }
    return false;
  }

  bool exists(const std::vector<VarRef> &vars, const Formula &body, std::size_t i, bool want) {
    const Frame &frame = trace_[i];
    std::size_t mark = env_.objects.size();
    for (const auto &v : vars) {
      env_.objects.push_back({v.name, {}});
    }
    bool found = false;
    for_each_assignment(vars.size(), frame, [&](std::span<const ObjectId> tuple) {
      if (stats_) {
        ++stats_->assignments;
      }
      for (std::size_t k = 0; k < tuple.size(); ++k) {
        env_.objects[mark + k].second = {tuple[k], frame.objects.at(tuple[k]).bbox};
      }
      found = at(body, i) == want;
      return found;
    });
    env_.objects.resize(mark);
    return found;
  }

  bool area_ratio(const SpatialTerm &lhs, const SpatialTerm &rhs, Cmp cmp, double ratio,
                  std::size_t i) {
    double num = eval_spatial(lhs, ctx(i), env_).area();
    double den = eval_spatial(rhs, ctx(i), env_).area();
    return ratio_holds(num, den, cmp, ratio, stats_);
  }

  template <class T> bool node(const T &n, const Formula &self, std::size_t i) {
    if constexpr (std::is_same_v<T, fm::True>) {
      return true;
    } else if constexpr (std::is_same_v<T, fm::Not>) {
      return !at(*n.arg, i);
    } else if constexpr (std::is_same_v<T, fm::Or>) {
      return at(*n.lhs, i) || at(*n.rhs, i);
    } else if constexpr (std::is_same_v<T, fm::And>) {
      return at(*n.lhs, i) && at(*n.rhs, i);
    } else if constexpr (std::is_same_v<T, fm::Implies>) {
      return !at(*n.lhs, i) || at(*n.rhs, i);
    } else if constexpr (std::is_same_v<T, fm::Next>) {
      return i + 1 < trace_.size() && at(*n.arg, i + 1);
    } else if constexpr (std::is_same_v<T, fm::Prev>) {
      return i > 0 && at(*n.arg, i - 1);
    } else if constexpr (std::is_same_v<T, fm::Until>) {
      return sweep(
          i, +1, [&](std::size_t k) { return at(*n.lhs, k); },
          [&](std::size_t k) { return at(*n.rhs, k); });
    } else if constexpr (std::is_same_v<T, fm::Since>) {
      return sweep(
          i, -1, [&](std::size_t k) { return at(*n.lhs, k); },
          [&](std::size_t k) { return at(*n.rhs, k); });
    } else if constexpr (std::is_same_v<T, fm::Eventually>) {
      return sweep(
          i, +1, [](std::size_t) { return true; }, [&](std::size_t k) { return at(*n.arg, k); });
    } else if constexpr (std::is_same_v<T, fm::Always>) {
      return !sweep(
          i, +1, [](std::size_t) { return true; }, [&](std::size_t k) { return !at(*n.arg, k); });
    } else if constexpr (std::is_same_v<T, fm::Once>) {
      return sweep(
          i, -1, [](std::size_t) { return true; }, [&](std::size_t k) { return at(*n.arg, k); });
    } else if constexpr (std::is_same_v<T, fm::Holds>) {
      return !sweep(
          i, -1, [](std::size_t) { return true; }, [&](std::size_t k) { return !at(*n.arg, k); });
    } else if constexpr (std::is_same_v<T, fm::Exists>) {
      return exists(n.vars, *n.body, i, true);
    } else if constexpr (std::is_same_v<T, fm::Forall>) {
      return !exists(n.vars, *n.body, i, false);
    } else if constexpr (std::is_same_v<T, fm::Freeze>) {
      if (n.time_var) {
        env_.time_pins.push_back({n.time_var->name, trace_[i].timestamp});
      }
      if (n.frame_var) {
        env_.frame_pins.push_back({n.frame_var->name, i});
      }
      bool result = at(*n.body, i);
      if (n.time_var) {
        env_.time_pins.pop_back();
      }
      if (n.frame_var) {
        env_.frame_pins.pop_back();
      }
      return result;
    } else if constexpr (std::is_same_v<T, fm::TimeConstraint>) {
      return eval_time_constraint(n, ctx(i), env_);
    } else if constexpr (std::is_same_v<T, fm::FrameConstraint>) {
      return eval_frame_constraint(n, ctx(i), env_);
    } else if constexpr (std::is_same_v<T, fm::ClassEqConst> || std::is_same_v<T, fm::ClassEqVar> ||
                         std::is_same_v<T, fm::ProbCmpConst> ||
                         std::is_same_v<T, fm::ProbCmpRatio> || std::is_same_v<T, fm::IdEq> ||
                         std::is_same_v<T, fm::IdNeq>) {
      return eval_object_atom(self, ctx(i), env_, stats_);
    } else if constexpr (std::is_same_v<T, fm::SpatialExists>) {
      return !eval_spatial(*n.term, ctx(i), env_).is_empty();
    } else if constexpr (std::is_same_v<T, fm::AreaCmpConst>) {
      return compare(eval_spatial(*n.term, ctx(i), env_).area(), n.cmp, n.bound);
    } else if constexpr (std::is_same_v<T, fm::AreaCmpRatio>) {
      return area_ratio(*n.lhs, *n.rhs, n.cmp, n.ratio, i);
    } else if constexpr (std::is_same_v<T, fm::EDCmp>) {
      return compare(euclidean_distance(n, env_), n.cmp, n.bound);
    } else if constexpr (std::is_same_v<T, fm::OffsetCmpConst>) {
      return compare(offset_value(n.term, env_), n.cmp, n.bound);
    } else {
      static_assert(std::is_same_v<T, fm::OffsetCmpRatio>);
      return ratio_holds(offset_value(n.lhs, env_), offset_value(n.rhs, env_), n.cmp, n.ratio,
                         stats_);
    }
  }

  std::span<const Frame> trace_;
  Env env_;
  EvalStats *stats_;
};

} // namespace

bool eval(const Formula &f, const EvalContext &ctx, const Env &env, EvalStats *stats) {
  if (ctx.index >= ctx.trace.size()) {
    throw ContractViolation("evaluation index outside the trace");
  }
  return Evaluator(ctx.trace, env, stats).at(f, ctx.index);
}

std::vector<bool> evaluate_trace(const Formula &f, std::span<const Frame> trace,
                                 EvalStats *stats) {
  std::vector<bool> out;
  out.reserve(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out.push_back(eval(f, {trace, i}, {}, stats));
  }
  return out;
}

} // namespace percemon
