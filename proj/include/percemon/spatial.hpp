#pragma once

#include <span>
#include <vector>

#include "percemon/trace.hpp"

namespace percemon {

/// The bounding rectangle [0,width]x[0,height] all regions live in.
struct Universe {
  double width = 0.0;
  double height = 0.0;

  bool operator==(const Universe &) const = default;
};

/// Finite union of pairwise interior-disjoint, non-degenerate rectangles.
///
/// Regions are compared by measure: shared edges and zero-width slivers do
/// not count, so a region with no rectangles is exactly the empty set.
/// Combining regions from different universes throws std::logic_error.
class Region {
public:
  static Region empty(const Universe &u) { return Region(u, {}); }

  static Region from_box(const BoundingBox &box, const Universe &u);
  static Region full(const Universe &u);

  const Universe &universe() const { return universe_; }
  std::span<const BoundingBox> rects() const { return rects_; }
  double area() const;
  bool is_empty() const { return rects_.empty(); }

  friend Region unite(const Region &a, const Region &b);
  friend Region intersect(const Region &a, const Region &b);
  friend Region complement(const Region &a, const Universe &u);

private:
  Region(const Universe &u, std::vector<BoundingBox> rects)
      : universe_(u), rects_(std::move(rects)) {}

  Universe universe_;
  std::vector<BoundingBox> rects_;
};

Region unite(const Region &a, const Region &b);
Region intersect(const Region &a, const Region &b);
Region complement(const Region &a, const Universe &u);

/// Area of the symmetric difference; zero iff the point sets agree up to
/// measure zero.
double symmetric_difference_area(const Region &a, const Region &b, const Universe &u);

} // namespace percemon
