#pragma once

// Exact rational geometry for the cells of piecewise-constant functions:
// half-open intervals on the line and convex polygons in the plane.

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "superframe/matrix.hpp"

namespace superframe {

using Point2 = std::array<Rational, 2>;

struct Interval {
  Rational lo;
  Rational hi;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Convex polygon, counter-clockwise, no repeated or collinear vertices,
/// starting at its lexicographically smallest vertex.
struct Polygon {
  std::vector<Point2> vertices;

  friend bool operator==(const Polygon&, const Polygon&) = default;
};

using Region = std::variant<Interval, Polygon>;

/// Closed axis-aligned box [lo, hi].
struct Box {
  RatVector lo;
  RatVector hi;
};

int dimension(const Region& region);
Rational measure(const Region& region);
Box bounding_box(const Region& region);
Box box_union(const Box& a, const Box& b);
bool boxes_overlap(const Box& a, const Box& b);

/// Image of the box corners under x -> A x + b, boxed again.
Box affine_image(const Box& box, const RatMatrix& a, const RatVector& b);

/// Image of a region under x -> A x + b with A invertible.
Region affine_image(const Region& region, const RatMatrix& a, const RatVector& b);

/// Positive-measure intersection, or nullopt.
std::optional<Region> intersect(const Region& a, const Region& b);
Rational intersection_measure(const Region& a, const Region& b);

/// a \ b as a list of pairwise disjoint convex pieces (up to measure zero).
std::vector<Region> subtract(const Region& a, const Region& b);

/// Membership with half-open semantics for intervals; polygons count their
/// boundary. Only meaningful almost everywhere.
bool contains(const Region& region, const RatVector& x);

/// Normalizes orientation, drops duplicate/collinear vertices, rotates to the
/// lexicographically smallest vertex. Returns nullopt for degenerate input.
std::optional<Polygon> make_polygon(std::vector<Point2> vertices);

bool is_convex_ccw(const std::vector<Point2>& vertices);
Rational signed_area(const std::vector<Point2>& vertices);

/// Strict weak order used to sort cells canonically.
bool region_less(const Region& a, const Region& b);

}  // namespace superframe
