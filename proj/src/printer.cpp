#include <charconv>
#include <type_traits>

#include "percemon/parser.hpp"

namespace percemon {

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

namespace {

std::string quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
    case '"':
      out += "\\\"";
      break;
    case '\\':
      out += "\\\\";
      break;
    case '\n':
      out += "\\n";
      break;
    case '\t':
      out += "\\t";
      break;
    default:
      out += c;
    }
  }
  return out + "\"";
}

std::string spatial_child(const SpatialTerm &t) {
  if (std::holds_alternative<sp::Complement>(t.node) || std::holds_alternative<sp::Union>(t.node) ||
      std::holds_alternative<sp::Intersection>(t.node)) {
    return "(" + format(t) + ")";
  }
  return format(t);
}

std::string child(const Formula &f) {
  if (f.is<fm::True>()) {
    return "true";
  }
  return "(" + format(f) + ")";
}

std::string offset(const OffsetTerm &t) {
  return std::string(t.axis == Axis::Lat ? "lat(" : "lon(") + t.var.name + ", " +
         to_string(t.crt) + ")";
}

std::string var_list(const std::vector<VarRef> &vars) {
  std::string out;
  for (const auto &v : vars) {
    out += (out.empty() ? "" : ", ") + v.name;
  }
  return out;
}

std::string clock(const VarRef &v, ClockOrder order, const char *constant) {
  return order == ClockOrder::PinnedMinusCurrent ? v.name + " - " + constant
                                                 : std::string(constant) + " - " + v.name;
}

std::string cmp_text(Cmp cmp) { return std::string(" ") + to_string(cmp) + " "; }

} // namespace

std::string format(const SpatialTerm &t) {
  return std::visit(
      [](const auto &n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, sp::Empty>) {
          return "empty";
        } else if constexpr (std::is_same_v<T, sp::Universe>) {
          return "universe";
        } else if constexpr (std::is_same_v<T, sp::BBoxOf>) {
          return "bbox(" + n.var.name + ")";
        } else if constexpr (std::is_same_v<T, sp::Complement>) {
          return "~" + spatial_child(*n.arg);
        } else if constexpr (std::is_same_v<T, sp::Union>) {
          return spatial_child(*n.lhs) + " | " + spatial_child(*n.rhs);
        } else {
          return spatial_child(*n.lhs) + " & " + spatial_child(*n.rhs);
        }
      },
      t.node);
}

std::string format(const Formula &f) {
  return std::visit(
      [](const auto &n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, fm::True>) {
          return "true";
        } else if constexpr (std::is_same_v<T, fm::Not>) {
          return "!" + child(*n.arg);
        } else if constexpr (std::is_same_v<T, fm::Or>) {
          return child(*n.lhs) + " || " + child(*n.rhs);
        } else if constexpr (std::is_same_v<T, fm::And>) {
          return child(*n.lhs) + " && " + child(*n.rhs);
        } else if constexpr (std::is_same_v<T, fm::Implies>) {
          return child(*n.lhs) + " -> " + child(*n.rhs);
        } else if constexpr (std::is_same_v<T, fm::Until>) {
          return child(*n.lhs) + " until " + child(*n.rhs);
        } else if constexpr (std::is_same_v<T, fm::Since>) {
          return child(*n.lhs) + " since " + child(*n.rhs);
        } else if constexpr (std::is_same_v<T, fm::Next>) {
          return "next " + child(*n.arg);
        } else if constexpr (std::is_same_v<T, fm::Prev>) {
          return "prev " + child(*n.arg);
        } else if constexpr (std::is_same_v<T, fm::Always>) {
          return "always " + child(*n.arg);
        } else if constexpr (std::is_same_v<T, fm::Eventually>) {
          return "eventually " + child(*n.arg);
        } else if constexpr (std::is_same_v<T, fm::Once>) {
          return "once " + child(*n.arg);
        } else if constexpr (std::is_same_v<T, fm::Holds>) {
          return "holds " + child(*n.arg);
        } else if constexpr (std::is_same_v<T, fm::Exists>) {
          return "exists {" + var_list(n.vars) + "} @ (" + format(*n.body) + ")";
        } else if constexpr (std::is_same_v<T, fm::Forall>) {
          return "forall {" + var_list(n.vars) + "} @ (" + format(*n.body) + ")";
        } else if constexpr (std::is_same_v<T, fm::Freeze>) {
          return "pin (" + (n.time_var ? n.time_var->name : "_") + ", " +
                 (n.frame_var ? n.frame_var->name : "_") + ") { " + format(*n.body) + " }";
        } else if constexpr (std::is_same_v<T, fm::TimeConstraint>) {
          return clock(n.var, n.order, "C_TIME") + cmp_text(n.cmp) + format_number(n.bound);
        } else if constexpr (std::is_same_v<T, fm::FrameConstraint>) {
          return clock(n.var, n.order, "C_FRAME") + cmp_text(n.cmp) + std::to_string(n.bound);
        } else if constexpr (std::is_same_v<T, fm::ClassEqConst>) {
          return "class(" + n.var.name + ") == " + quote(n.label);
        } else if constexpr (std::is_same_v<T, fm::ClassEqVar>) {
          return "class(" + n.lhs.name + ") == class(" + n.rhs.name + ")";
        } else if constexpr (std::is_same_v<T, fm::ProbCmpConst>) {
          return "prob(" + n.var.name + ")" + cmp_text(n.cmp) + format_number(n.bound);
        } else if constexpr (std::is_same_v<T, fm::ProbCmpRatio>) {
          return "prob(" + n.lhs.name + ") / prob(" + n.rhs.name + ")" + cmp_text(n.cmp) +
                 format_number(n.ratio);
        } else if constexpr (std::is_same_v<T, fm::IdEq>) {
          return n.lhs.name + " == " + n.rhs.name;
        } else if constexpr (std::is_same_v<T, fm::IdNeq>) {
          return n.lhs.name + " != " + n.rhs.name;
        } else if constexpr (std::is_same_v<T, fm::SpatialExists>) {
          return "nonempty(" + format(*n.term) + ")";
        } else if constexpr (std::is_same_v<T, fm::AreaCmpConst>) {
          return "area(" + format(*n.term) + ")" + cmp_text(n.cmp) + format_number(n.bound);
        } else if constexpr (std::is_same_v<T, fm::AreaCmpRatio>) {
          return "area(" + format(*n.lhs) + ") / area(" + format(*n.rhs) + ")" +
                 cmp_text(n.cmp) + format_number(n.ratio);
        } else if constexpr (std::is_same_v<T, fm::EDCmp>) {
          return "dist(" + n.lhs.name + ", " + to_string(n.lhs_crt) + ", " + n.rhs.name + ", " +
                 to_string(n.rhs_crt) + ")" + cmp_text(n.cmp) + format_number(n.bound);
        } else if constexpr (std::is_same_v<T, fm::OffsetCmpConst>) {
          return offset(n.term) + cmp_text(n.cmp) + format_number(n.bound);
        } else {
          static_assert(std::is_same_v<T, fm::OffsetCmpRatio>);
          return offset(n.lhs) + " / " + offset(n.rhs) + cmp_text(n.cmp) +
                 format_number(n.ratio);
        }
      },
      f.node);
}

} // namespace percemon
