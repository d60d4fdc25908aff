#include "percemon/ast.hpp"

#include <type_traits>

namespace percemon {

bool compare(double lhs, Cmp cmp, double rhs) {
  switch (cmp) {
  case Cmp::Lt:
    return lhs < rhs;
  case Cmp::Le:
    return lhs <= rhs;
  case Cmp::Gt:
    return lhs > rhs;
  case Cmp::Ge:
    return lhs >= rhs;
  case Cmp::Eq:
    return lhs == rhs;
  case Cmp::Ne:
    return lhs != rhs;
  }
  return false;
}

const char *to_string(Cmp cmp) {
  switch (cmp) {
  case Cmp::Lt:
    return "<";
  case Cmp::Le:
    return "<=";
  case Cmp::Gt:
    return ">";
  case Cmp::Ge:
    return ">=";
  case Cmp::Eq:
    return "==";
  case Cmp::Ne:
    return "!=";
  }
  return "?";
}

const char *to_string(RefPoint crt) {
  switch (crt) {
  case RefPoint::LM:
    return "lm";
  case RefPoint::RM:
    return "rm";
  case RefPoint::TM:
    return "tm";
  case RefPoint::BM:
    return "bm";
  case RefPoint::CT:
    return "ct";
  }
  return "?";
}

namespace {

bool spatial_is_core(const SpatialTerm &t) {
  return std::visit(
      [](const auto &n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, sp::Intersection>) {
          return false;
        } else if constexpr (std::is_same_v<T, sp::Complement>) {
          return spatial_is_core(*n.arg);
        } else if constexpr (std::is_same_v<T, sp::Union>) {
          return spatial_is_core(*n.lhs) && spatial_is_core(*n.rhs);
        } else {
          return true;
        }
      },
      t.node);
}

std::size_t spatial_count(const SpatialTerm &t) {
  return std::visit(
      [](const auto &n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, sp::Complement>) {
          return 1 + spatial_count(*n.arg);
        } else if constexpr (std::is_same_v<T, sp::Union> || std::is_same_v<T, sp::Intersection>) {
          return 1 + spatial_count(*n.lhs) + spatial_count(*n.rhs);
        } else {
          return 1;
        }
      },
      t.node);
}

} // namespace

bool is_core(const Formula &f) {
  return std::visit(
      [](const auto &n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, fm::And> || std::is_same_v<T, fm::Implies> ||
                      std::is_same_v<T, fm::Forall> || std::is_same_v<T, fm::Always> ||
                      std::is_same_v<T, fm::Eventually> || std::is_same_v<T, fm::Once> ||
                      std::is_same_v<T, fm::Holds>) {
          return false;
        } else if constexpr (std::is_same_v<T, fm::Not> || std::is_same_v<T, fm::Next> ||
                             std::is_same_v<T, fm::Prev>) {
          return is_core(*n.arg);
        } else if constexpr (std::is_same_v<T, fm::Or> || std::is_same_v<T, fm::Until> ||
                             std::is_same_v<T, fm::Since>) {
          return is_core(*n.lhs) && is_core(*n.rhs);
        } else if constexpr (std::is_same_v<T, fm::Exists> || std::is_same_v<T, fm::Freeze>) {
          return is_core(*n.body);
        } else if constexpr (std::is_same_v<T, fm::SpatialExists> ||
                             std::is_same_v<T, fm::AreaCmpConst>) {
          return spatial_is_core(*n.term);
        } else if constexpr (std::is_same_v<T, fm::AreaCmpRatio>) {
          return spatial_is_core(*n.lhs) && spatial_is_core(*n.rhs);
        } else {
          return true;
        }
      },
      f.node);
}

std::size_t node_count(const Formula &f) {
  return std::visit(
      [](const auto &n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (requires { n.lhs.get()->node; } && requires { n.rhs.get()->node; }) {
          if constexpr (std::is_same_v<T, fm::AreaCmpRatio>) {
            return 1 + spatial_count(*n.lhs) + spatial_count(*n.rhs);
          } else {
            return 1 + node_count(*n.lhs) + node_count(*n.rhs);
          }
        } else if constexpr (requires { n.arg; }) {
          return 1 + node_count(*n.arg);
        } else if constexpr (requires { n.body; }) {
          return 1 + node_count(*n.body);
        } else if constexpr (requires { n.term.get()->node; }) {
          return 1 + spatial_count(*n.term);
        } else {
          return 1;
        }
      },
      f.node);
}

} // namespace percemon
