#include "percemon/spatial.hpp"

#include <algorithm>
#include <stdexcept>

namespace percemon {

namespace {

bool overlaps(const BoundingBox &a, const BoundingBox &b) {
  return a.xmin < b.xmax && b.xmin < a.xmax && a.ymin < b.ymax && b.ymin < a.ymax;
}

BoundingBox overlap(const BoundingBox &a, const BoundingBox &b) {
  return {std::max(a.xmin, b.xmin), std::max(a.ymin, b.ymin), std::min(a.xmax, b.xmax),
          std::min(a.ymax, b.ymax)};
}

// Pieces of `a` outside `cut`, split into vertical slabs: the full-height
// strips left and right of `cut`, then the parts above and below it.
void subtract_into(const BoundingBox &a, const BoundingBox &cut, std::vector<BoundingBox> &out) {
  if (!overlaps(a, cut)) {
    out.push_back(a);
    return;
  }
  BoundingBox mid = overlap(a, cut);
  if (a.xmin < mid.xmin) {
    out.push_back({a.xmin, a.ymin, mid.xmin, a.ymax});
  }
  if (mid.xmax < a.xmax) {
    out.push_back({mid.xmax, a.ymin, a.xmax, a.ymax});
  }
  if (a.ymin < mid.ymin) {
    out.push_back({mid.xmin, a.ymin, mid.xmax, mid.ymin});
  }
  if (mid.ymax < a.ymax) {
    out.push_back({mid.xmin, mid.ymax, mid.xmax, a.ymax});
  }
}

// Parts of `pieces` not covered by any rectangle in `cuts`.
std::vector<BoundingBox> subtract_all(std::vector<BoundingBox> pieces,
                                      std::span<const BoundingBox> cuts) {
  std::vector<BoundingBox> next;
  for (const auto &cut : cuts) {
    next.clear();
    for (const auto &p : pieces) {
      subtract_into(p, cut, next);
    }
    pieces.swap(next);
    if (pieces.empty()) {
      break;
    }
  }
  return pieces;
}

void require_same(const Universe &a, const Universe &b) {
  if (!(a == b)) {
    throw std::logic_error("regions belong to different universes");
  }
}

} // namespace

Region Region::from_box(const BoundingBox &box, const Universe &u) {
  BoundingBox clipped = clip_box(box, u.width, u.height);
  if (clipped.degenerate()) {
    return Region(u, {});
  }
  return Region(u, {clipped});
}

Region Region::full(const Universe &u) { return from_box({0.0, 0.0, u.width, u.height}, u); }

double Region::area() const {
  double total = 0.0;
  for (const auto &r : rects_) {
    total += r.width() * r.height();
  }
  return total;
}

Region unite(const Region &a, const Region &b) {
  require_same(a.universe_, b.universe_);
  std::vector<BoundingBox> out = a.rects_;
  std::vector<BoundingBox> extra = subtract_all(b.rects_, a.rects_);
  out.insert(out.end(), extra.begin(), extra.end());
  return Region(a.universe_, std::move(out));
}

Region intersect(const Region &a, const Region &b) {
  require_same(a.universe_, b.universe_);
  std::vector<BoundingBox> out;
  for (const auto &ra : a.rects_) {
    for (const auto &rb : b.rects_) {
      if (overlaps(ra, rb)) {
        out.push_back(overlap(ra, rb));
      }
    }
  }
  return Region(a.universe_, std::move(out));
}

Region complement(const Region &a, const Universe &u) {
  require_same(a.universe_, u);
  return Region(u, subtract_all(Region::full(u).rects_, a.rects_));
}

double symmetric_difference_area(const Region &a, const Region &b, const Universe &u) {
  return intersect(a, complement(b, u)).area() + intersect(b, complement(a, u)).area();
}

} // namespace percemon
