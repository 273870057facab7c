#include "superframe/geometry.hpp"

#include <algorithm>

namespace superframe {
namespace {

Rational cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Part of a convex polygon on the left of the directed line from a to b.
std::vector<Point2> clip_left(const std::vector<Point2>& subject, const Point2& a, const Point2& b) {
  std::vector<Point2> out;
  const std::size_t n = subject.size();
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& cur = subject[i];
    const Point2& next = subject[(i + 1) % n];
    const Rational sc = cross(a, b, cur);
    const Rational sn = cross(a, b, next);
    if (sgn(sc) >= 0) out.push_back(cur);
    if ((sgn(sc) > 0 && sgn(sn) < 0) || (sgn(sc) < 0 && sgn(sn) > 0)) {
      const Rational t = sc / (sc - sn);
      out.push_back({cur[0] + t * (next[0] - cur[0]), cur[1] + t * (next[1] - cur[1])});
    }
  }
  return out;
}

const Polygon* as_polygon(const Region& r) { return std::get_if<Polygon>(&r); }
const Interval* as_interval(const Region& r) { return std::get_if<Interval>(&r); }

void require_same_dim(const Region& a, const Region& b) {
  if (a.index() != b.index()) throw Error(ErrorKind::ShapeMismatch, "regions of different dimension");
}

std::optional<Polygon> polygon_intersection(const Polygon& a, const Polygon& b) {
  std::vector<Point2> pts = a.vertices;
  const std::size_t n = b.vertices.size();
  for (std::size_t i = 0; i < n && pts.size() >= 3; ++i)
    pts = clip_left(pts, b.vertices[i], b.vertices[(i + 1) % n]);
  return make_polygon(std::move(pts));
}

}  // namespace

int dimension(const Region& region) { return as_interval(region) ? 1 : 2; }

Rational signed_area(const std::vector<Point2>& v) {
  Rational twice = 0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % n];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  return twice / 2;
}

bool is_convex_ccw(const std::vector<Point2>& v) {
  const std::size_t n = v.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (sgn(cross(v[i], v[(i + 1) % n], v[(i + 2) % n])) < 0) return false;
  return sgn(signed_area(v)) > 0;
}

std::optional<Polygon> make_polygon(std::vector<Point2> v) {
  auto drop_duplicates = [](std::vector<Point2>& pts) {
    std::vector<Point2> out;
    for (auto& p : pts)
      if (out.empty() || out.back() != p) out.push_back(std::move(p));
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    pts = std::move(out);
  };
  drop_duplicates(v);
  if (v.size() < 3) return std::nullopt;
  const Rational area = signed_area(v);
  if (area == 0) return std::nullopt;
  if (area < 0) std::reverse(v.begin(), v.end());

  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::size_t n = v.size();
      if (cross(v[(i + n - 1) % n], v[i], v[(i + 1) % n]) == 0) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (v.size() < 3) return std::nullopt;
  const auto first = std::min_element(v.begin(), v.end());
  std::rotate(v.begin(), first, v.end());
  return Polygon{std::move(v)};
}

Rational measure(const Region& region) {
  if (const auto* iv = as_interval(region)) return iv->hi - iv->lo;
  return signed_area(as_polygon(region)->vertices);
}

Box bounding_box(const Region& region) {
  if (const auto* iv = as_interval(region)) return Box{{iv->lo}, {iv->hi}};
  const auto& v = as_polygon(region)->vertices;
  Box box{{v[0][0], v[0][1]}, {v[0][0], v[0][1]}};
  for (const auto& p : v)
    for (std::size_t k = 0; k < 2; ++k) {
      if (p[k] < box.lo[k]) box.lo[k] = p[k];
      if (p[k] > box.hi[k]) box.hi[k] = p[k];
    }
  return box;
}

Box box_union(const Box& a, const Box& b) {
  Box out = a;
  for (std::size_t k = 0; k < a.lo.size(); ++k) {
    if (b.lo[k] < out.lo[k]) out.lo[k] = b.lo[k];
    if (b.hi[k] > out.hi[k]) out.hi[k] = b.hi[k];
  }
  return out;
}

bool boxes_overlap(const Box& a, const Box& b) {
  for (std::size_t k = 0; k < a.lo.size(); ++k)
    if (a.hi[k] <= b.lo[k] || b.hi[k] <= a.lo[k]) return false;
  return true;
}

Box affine_image(const Box& box, const RatMatrix& a, const RatVector& b) {
  const std::size_t d = box.lo.size();
  Box out;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    RatVector corner(d);
    for (std::size_t k = 0; k < d; ++k) corner[k] = (mask >> k) & 1u ? box.hi[k] : box.lo[k];
    const RatVector image = add(a * corner, b);
    if (mask == 0) {
      out = Box{image, image};
    } else {
      out = box_union(out, Box{image, image});
    }
  }
  return out;
}

Region affine_image(const Region& region, const RatMatrix& a, const RatVector& b) {
  if (const auto* iv = as_interval(region)) {
    Rational x = a(0, 0) * iv->lo + b[0];
    Rational y = a(0, 0) * iv->hi + b[0];
    if (y < x) std::swap(x, y);
    return Interval{x, y};
  }
  std::vector<Point2> pts;
  for (const auto& p : as_polygon(region)->vertices)
    pts.push_back({a(0, 0) * p[0] + a(0, 1) * p[1] + b[0], a(1, 0) * p[0] + a(1, 1) * p[1] + b[1]});
  auto poly = make_polygon(std::move(pts));
  if (!poly) throw Error(ErrorKind::SingularMatrix, "affine map collapsed a polygon");
  return *poly;
}

std::optional<Region> intersect(const Region& a, const Region& b) {
  require_same_dim(a, b);
  if (const auto* ia = as_interval(a)) {
    const auto* ib = as_interval(b);
    const Rational& lo = ia->lo > ib->lo ? ia->lo : ib->lo;
    const Rational& hi = ia->hi < ib->hi ? ia->hi : ib->hi;
    if (lo < hi) return Interval{lo, hi};
    return std::nullopt;
  }
  if (!boxes_overlap(bounding_box(a), bounding_box(b))) return std::nullopt;
  auto poly = polygon_intersection(*as_polygon(a), *as_polygon(b));
  if (!poly) return std::nullopt;
  return *poly;
}

Rational intersection_measure(const Region& a, const Region& b) {
  require_same_dim(a, b);
  if (const auto* ia = as_interval(a)) {
    const auto* ib = as_interval(b);
    const Rational& lo = ia->lo > ib->lo ? ia->lo : ib->lo;
    const Rational& hi = ia->hi < ib->hi ? ia->hi : ib->hi;
    return lo < hi ? Rational(hi - lo) : Rational(0);
  }
  const auto r = intersect(a, b);
  return r ? measure(*r) : Rational(0);
}

std::vector<Region> subtract(const Region& a, const Region& b) {
  require_same_dim(a, b);
  if (const auto* ia = as_interval(a)) {
    const auto* ib = as_interval(b);
    if (ib->hi <= ia->lo || ia->hi <= ib->lo) return {a};
    std::vector<Region> out;
    if (ia->lo < ib->lo) out.push_back(Interval{ia->lo, ib->lo});
    if (ib->hi < ia->hi) out.push_back(Interval{ib->hi, ia->hi});
    return out;
  }
  if (!boxes_overlap(bounding_box(a), bounding_box(b))) return {a};
  // a minus b = union over edges e_i of a ∩ H_0 ∩ ... ∩ H_{i-1} ∩ (right of e_i).
  std::vector<Region> out;
  std::vector<Point2> rest = as_polygon(a)->vertices;
  const auto& clip = as_polygon(b)->vertices;
  const std::size_t n = clip.size();
  for (std::size_t i = 0; i < n && rest.size() >= 3; ++i) {
    const Point2& p0 = clip[i];
    const Point2& p1 = clip[(i + 1) % n];
    if (auto outside = make_polygon(clip_left(rest, p1, p0))) out.emplace_back(std::move(*outside));
    rest = clip_left(rest, p0, p1);
  }
  return out;
}

bool contains(const Region& region, const RatVector& x) {
  if (const auto* iv = as_interval(region)) return iv->lo <= x[0] && x[0] < iv->hi;
  const auto& v = as_polygon(region)->vertices;
  const Point2 p{x[0], x[1]};
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(cross(v[i], v[(i + 1) % v.size()], p)) < 0) return false;
  return true;
}

bool region_less(const Region& a, const Region& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  if (const auto* ia = as_interval(a)) {
    const auto* ib = as_interval(b);
    if (ia->lo != ib->lo) return ia->lo < ib->lo;
    return ia->hi < ib->hi;
  }
  const auto& va = as_polygon(a)->vertices;
  const auto& vb = as_polygon(b)->vertices;
  return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

}  // namespace superframe
