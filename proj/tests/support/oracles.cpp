#include "oracles.hpp"

#include <algorithm>
#include <type_traits>
#include <variant>

namespace percemon::testkit {

bool covers(const SpatialTerm &term, const BoxEnv &boxes, double x, double y, double width,
            double height) {
  return std::visit(
      [&](const auto &n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, sp::Empty>) {
          return false;
        } else if constexpr (std::is_same_v<T, sp::Universe>) {
          return x < width && y < height;
        } else if constexpr (std::is_same_v<T, sp::BBoxOf>) {
          const BoundingBox &b = boxes.at(n.var.name);
          return b.xmin <= x && x < b.xmax && b.ymin <= y && y < b.ymax;
        } else if constexpr (std::is_same_v<T, sp::Complement>) {
          return !covers(*n.arg, boxes, x, y, width, height);
        } else if constexpr (std::is_same_v<T, sp::Union>) {
          return covers(*n.lhs, boxes, x, y, width, height) ||
                 covers(*n.rhs, boxes, x, y, width, height);
        } else {
          return covers(*n.lhs, boxes, x, y, width, height) &&
                 covers(*n.rhs, boxes, x, y, width, height);
        }
      },
      term.node);
}

std::int64_t raster_area(const SpatialTerm &term, const BoxEnv &boxes, int width, int height) {
  std::int64_t count = 0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      count += covers(term, boxes, x + 0.5, y + 0.5, width, height) ? 1 : 0;
    }
  }
  return count;
}

std::vector<bool> phi1_by_hand(const TraceStream &trace, const SpecParams &overrides) {
  SpecParams p = default_params(trace.empty() ? 800 : trace[0].width,
                                trace.empty() ? 600 : trace[0].height);
  for (const auto &[k, v] : overrides) {
    p[k] = v;
  }
  std::vector<bool> out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    bool ok = true;
    for (const auto &[id, obj] : trace[i].objects) {
      const BoundingBox &b = obj.bbox;
      bool relevant = obj.confidence > p["high_prob"] && b.ymin > p["c1"] && b.ymax < p["c2"] &&
                      b.xmin > p["c3"] && b.xmax < p["c4"] && i > 0;
      if (!relevant) {
        continue;
      }
      const DetectedObject *before = trace[i - 1].find(id);
      if (!before || !(before->confidence > p["exists_prob"])) {
        ok = false;
      }
    }
    out.push_back(ok);
  }
  return out;
}

std::vector<bool> phi2_by_hand(const TraceStream &trace, const SpecParams &overrides) {
  SpecParams p = default_params(800, 600);
  for (const auto &[k, v] : overrides) {
    p[k] = v;
  }
  std::vector<bool> out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    bool ok = true;
    for (const auto &[id, obj] : trace[i].objects) {
      if (i == 0) {
        continue;
      }
      // Some object of the previous frame must either be a different track or
      // overlap the current box enough.
      bool found = false;
      for (const auto &[id2, obj2] : trace[i - 1].objects) {
        if (id2 != id) {
          found = true;
          break;
        }
        const BoundingBox &a = obj.bbox;
        const BoundingBox &b = obj2.bbox;
        double w = std::max(0.0, std::min(a.xmax, b.xmax) - std::max(a.xmin, b.xmin));
        double h = std::max(0.0, std::min(a.ymax, b.ymax) - std::max(a.ymin, b.ymin));
        double own = a.width() * a.height();
        if (own > 0 && w * h / own >= p["overlap"]) {
          found = true;
          break;
        }
      }
      ok = ok && found;
    }
    out.push_back(ok);
  }
  return out;
}

} // namespace percemon::testkit
