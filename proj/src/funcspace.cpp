#include "superframe/funcspace.hpp"

#include <algorithm>
#include <cmath>

#include "superframe/intlin.hpp"
#include "superframe/kernels.hpp"

namespace superframe {
namespace {

void require_region_dim(const Region& r, int dim) {
  if (dimension(r) != dim) throw Error(ErrorKind::ShapeMismatch, "cell dimension does not match function");
}

void require_same_dim(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  if (f.dim() != g.dim()) throw Error(ErrorKind::ShapeMismatch, "functions live on different spaces");
}

const Interval& interval_of(const Cell& c) { return std::get<Interval>(c.region); }

// Overlay of several d = 1 functions on their common breakpoints.
PiecewiseFunction combine_1d(std::span<const Complex> coeffs, std::span<const PiecewiseFunction> fs) {
  std::vector<Rational> breaks;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (coeffs[i] == Complex(0.0)) continue;
    for (const auto& c : fs[i].cells()) {
      breaks.push_back(interval_of(c).lo);
      breaks.push_back(interval_of(c).hi);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<std::size_t> cursor(fs.size(), 0);
  std::vector<Cell> cells;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const Rational& lo = breaks[k];
    const Rational& hi = breaks[k + 1];
    Complex value = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (coeffs[i] == Complex(0.0)) continue;
      const auto& cs = fs[i].cells();
      while (cursor[i] < cs.size() && interval_of(cs[cursor[i]]).hi <= lo) ++cursor[i];
      if (cursor[i] < cs.size() && interval_of(cs[cursor[i]]).lo <= lo) value += coeffs[i] * cs[cursor[i]].value;
    }
    if (value == Complex(0.0)) continue;
    if (!cells.empty() && cells.back().value == value && interval_of(cells.back()).hi == lo) {
      std::get<Interval>(cells.back().region).hi = hi;
    } else {
      cells.push_back({Interval{lo, hi}, value});
    }
  }
  return PiecewiseFunction(1, std::move(cells));
}

// f + g for d = 2: pairwise intersections plus the uncovered remainders.
PiecewiseFunction add_2d(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  std::vector<Cell> out;
  auto remainder = [&out](const Cell& cell, const PiecewiseFunction& other) {
    std::vector<Region> pieces{cell.region};
    const Box cell_box = bounding_box(cell.region);
    for (const auto& o : other.cells()) {
      if (!boxes_overlap(cell_box, bounding_box(o.region))) continue;
      std::vector<Region> next;
      for (const auto& piece : pieces)
        for (auto& rest : subtract(piece, o.region)) next.push_back(std::move(rest));
      pieces = std::move(next);
      if (pieces.empty()) break;
    }
    for (auto& piece : pieces) out.push_back({std::move(piece), cell.value});
  };
  for (const auto& a : f.cells())
    for (const auto& b : g.cells())
      if (auto common = intersect(a.region, b.region)) out.push_back({std::move(*common), a.value + b.value});
  for (const auto& a : f.cells()) remainder(a, g);
  for (const auto& b : g.cells()) remainder(b, f);
  return PiecewiseFunction(2, std::move(out));
}

Rational random_fraction(StepRng& rng) {
  const long den = 2 + static_cast<long>(rng.below(15));
  const long num = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(den - 1)));
  return make_rational(num, den);
}

std::vector<Rational> random_breaks(StepRng& rng, const Rational& lo, const Rational& hi, std::size_t pieces) {
  std::vector<Rational> inner;
  while (inner.size() + 1 < pieces) {
    const Rational x = lo + (hi - lo) * random_fraction(rng);
    if (std::find(inner.begin(), inner.end(), x) == inner.end()) inner.push_back(x);
  }
  std::sort(inner.begin(), inner.end());
  std::vector<Rational> breaks{lo};
  breaks.insert(breaks.end(), inner.begin(), inner.end());
  breaks.push_back(hi);
  return breaks;
}

Complex random_value(StepRng& rng) {
  const double re = rng.symmetric_unit();
  const double im = rng.symmetric_unit();
  return {re, im};
}

Polygon rectangle(const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1) {
  return *make_polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

}  // namespace

void require_supported_dimension(std::size_t d) {
  if (d != 1 && d != 2)
    throw Error(ErrorKind::UnsupportedDimension,
                "the function model supports d = 1 and d = 2, got d = " + std::to_string(d));
}

PiecewiseFunction::PiecewiseFunction(int dim) : dim_(dim) { require_supported_dimension(static_cast<std::size_t>(dim)); }

PiecewiseFunction::PiecewiseFunction(int dim, std::vector<Cell> cells) : dim_(dim) {
  require_supported_dimension(static_cast<std::size_t>(dim));
  cells_.reserve(cells.size());
  for (auto& c : cells) {
    require_region_dim(c.region, dim);
    if (c.value == Complex(0.0) || sgn(measure(c.region)) <= 0) continue;
    cells_.push_back(std::move(c));
  }
  std::sort(cells_.begin(), cells_.end(), [](const Cell& a, const Cell& b) { return region_less(a.region, b.region); });
}

std::optional<Box> PiecewiseFunction::support_box() const {
  if (cells_.empty()) return std::nullopt;
  Box box = bounding_box(cells_.front().region);
  for (const auto& c : cells_) box = box_union(box, bounding_box(c.region));
  return box;
}

double PiecewiseFunction::norm_squared() const {
  std::vector<Complex> values;
  std::vector<double> weights;
  values.reserve(cells_.size());
  weights.reserve(cells_.size());
  for (const auto& c : cells_) {
    values.push_back(c.value);
    weights.push_back(to_double(measure(c.region)));
  }
  return kernels::weighted_conj_dot(values, values, weights).real();
}

double PiecewiseFunction::norm() const { return std::sqrt(norm_squared()); }

double PiecewiseFunction::max_abs_value() const {
  double m = 0.0;
  for (const auto& c : cells_) m = std::max(m, std::abs(c.value));
  return m;
}

Complex PiecewiseFunction::operator()(const RatVector& x) const {
  if (x.size() != static_cast<std::size_t>(dim_)) throw Error(ErrorKind::ShapeMismatch, "evaluation point");
  for (const auto& c : cells_)
    if (contains(c.region, x)) return c.value;
  return 0.0;
}

PiecewiseFunction PiecewiseFunction::scaled(Complex c) const {
  if (c == Complex(0.0)) return PiecewiseFunction(dim_);
  std::vector<Cell> out = cells_;
  if (c != Complex(1.0))
    for (auto& cell : out) cell.value *= c;
  return PiecewiseFunction(dim_, std::move(out));
}

double dilation_amplitude(const Integer& det, int j) {
  const double a = std::abs(det.get_d());
  return std::sqrt(std::pow(a, j));
}

AffineUnitary AffineUnitary::identity(std::size_t d) {
  return {RatMatrix::identity(d), RatVector(d, Rational(0)), Complex(1.0)};
}

AffineUnitary AffineUnitary::dilation(const IntMatrix& m, int j) {
  // D^j f(x) = |det M|^{j/2} f(M^j x): cells move by M^-j.
  const unsigned n = static_cast<unsigned>(std::abs(j));
  const IntMatrix mj = power(m, n);
  RatMatrix linear = j >= 0 ? inverse_rational(mj) : to_rational(mj);
  return {std::move(linear), RatVector(m.rows(), Rational(0)), Complex(dilation_amplitude(determinant(m), j))};
}

AffineUnitary AffineUnitary::translation(const RatVector& u) {
  return {RatMatrix::identity(u.size()), u, Complex(1.0)};
}

AffineUnitary AffineUnitary::scale_P(const IntMatrix& p) {
  const double amp = std::sqrt(Integer(abs(determinant(p))).get_d());
  return {inverse_rational(p), RatVector(p.rows(), Rational(0)), Complex(amp)};
}

AffineUnitary AffineUnitary::amplitude_only(std::size_t d, Complex c) {
  AffineUnitary u = identity(d);
  u.amplitude = c;
  return u;
}

AffineUnitary AffineUnitary::after(const AffineUnitary& inner) const {
  return {linear * inner.linear, add(shift, linear * inner.shift), amplitude * inner.amplitude};
}

PiecewiseFunction AffineUnitary::apply(const PiecewiseFunction& f) const {
  if (linear.rows() != static_cast<std::size_t>(f.dim())) throw Error(ErrorKind::ShapeMismatch, "operator dimension");
  std::vector<Cell> out;
  out.reserve(f.cells().size());
  const bool unit = amplitude == Complex(1.0);
  for (const auto& c : f.cells())
    out.push_back({affine_image(c.region, linear, shift), unit ? c.value : c.value * amplitude});
  return PiecewiseFunction(f.dim(), std::move(out));
}

PiecewiseFunction dilate(const PiecewiseFunction& f, const IntMatrix& m, int j) {
  if (j == 0) return f;
  return AffineUnitary::dilation(m, j).apply(f);
}

PiecewiseFunction translate(const PiecewiseFunction& f, const RatVector& u) {
  return AffineUnitary::translation(u).apply(f);
}

PiecewiseFunction scale_P(const PiecewiseFunction& f, const IntMatrix& p) {
  require_supported_dimension(p.rows());
  return AffineUnitary::scale_P(p).apply(f);
}

Complex inner_product(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  require_same_dim(f, g);
  std::vector<Complex> a, b;
  std::vector<double> w;
  const auto& fc = f.cells();
  const auto& gc = g.cells();
  auto push = [&](const Cell& x, const Cell& y, const Rational& m) {
    a.push_back(x.value);
    b.push_back(y.value);
    w.push_back(to_double(m));
  };
  if (f.dim() == 1) {
    std::size_t i = 0, j = 0;
    while (i < fc.size() && j < gc.size()) {
      const Interval& x = interval_of(fc[i]);
      const Interval& y = interval_of(gc[j]);
      const Rational& lo = x.lo > y.lo ? x.lo : y.lo;
      const Rational& hi = x.hi < y.hi ? x.hi : y.hi;
      if (lo < hi) push(fc[i], gc[j], hi - lo);
      if (x.hi < y.hi)
        ++i;
      else
        ++j;
    }
  } else {
    std::vector<Box> gb;
    gb.reserve(gc.size());
    for (const auto& c : gc) gb.push_back(bounding_box(c.region));
    for (const auto& x : fc) {
      const Box xb = bounding_box(x.region);
      for (std::size_t j = 0; j < gc.size(); ++j) {
        if (!boxes_overlap(xb, gb[j])) continue;
        const Rational m = intersection_measure(x.region, gc[j].region);
        if (sgn(m) > 0) push(x, gc[j], m);
      }
    }
  }
  return kernels::weighted_conj_dot(a, b, w);
}

PiecewiseFunction linear_combination(std::span<const Complex> coeffs, std::span<const PiecewiseFunction> fs) {
  if (coeffs.size() != fs.size() || fs.empty()) throw Error(ErrorKind::ShapeMismatch, "linear combination");
  const int dim = fs.front().dim();
  for (const auto& f : fs)
    if (f.dim() != dim) throw Error(ErrorKind::ShapeMismatch, "linear combination of mixed dimensions");
  if (dim == 1) return combine_1d(coeffs, fs);
  PiecewiseFunction acc(dim);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (coeffs[i] == Complex(0.0)) continue;
    acc = acc.is_zero() ? fs[i].scaled(coeffs[i]) : add_2d(acc, fs[i].scaled(coeffs[i]));
  }
  return acc;
}

PiecewiseFunction add(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  const Complex c[2] = {1.0, 1.0};
  const PiecewiseFunction fs[2] = {f, g};
  return linear_combination(c, fs);
}

PiecewiseFunction subtract(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  const Complex c[2] = {1.0, -1.0};
  const PiecewiseFunction fs[2] = {f, g};
  return linear_combination(c, fs);
}

PiecewiseFunction prune(const PiecewiseFunction& f, double tol) {
  std::vector<Cell> out;
  for (const auto& c : f.cells())
    if (std::abs(c.value) > tol) out.push_back(c);
  return PiecewiseFunction(f.dim(), std::move(out));
}

PiecewiseFunction canonical(const PiecewiseFunction& f, double tol) {
  if (f.dim() != 1) return f;
  std::vector<Cell> out;
  for (const auto& c : f.cells()) {
    if (!out.empty()) {
      Interval& last = std::get<Interval>(out.back().region);
      if (last.hi == interval_of(c).lo && std::abs(out.back().value - c.value) <= tol) {
        last.hi = interval_of(c).hi;
        continue;
      }
    }
    out.push_back(c);
  }
  return PiecewiseFunction(1, std::move(out));
}

double max_abs_difference(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  return subtract(f, g).max_abs_value();
}

double distance(const PiecewiseFunction& f, const PiecewiseFunction& g) { return subtract(f, g).norm(); }

bool same_geometry(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  if (f.dim() != g.dim()) return false;
  const auto cf = canonical(f);
  const auto cg = canonical(g);
  if (cf.cells().size() != cg.cells().size()) return false;
  for (std::size_t i = 0; i < cf.cells().size(); ++i)
    if (cf.cells()[i].region != cg.cells()[i].region) return false;
  return true;
}

bool functions_equal(const PiecewiseFunction& f, const PiecewiseFunction& g, double value_tol) {
  if (!same_geometry(f, g)) return false;
  const auto cf = canonical(f);
  const auto cg = canonical(g);
  for (std::size_t i = 0; i < cf.cells().size(); ++i)
    if (std::abs(cf.cells()[i].value - cg.cells()[i].value) > value_tol) return false;
  return true;
}

PiecewiseFunction haar() {
  return PiecewiseFunction(1, {{Interval{0, make_rational(1, 2)}, 1.0}, {Interval{make_rational(1, 2), 1}, -1.0}});
}

PiecewiseFunction indicator_interval(const Rational& a, const Rational& b) {
  if (!(a < b))
    throw Error(ErrorKind::InvalidGeometry, "interval [" + to_string(a) + ", " + to_string(b) + ") is empty");
  return PiecewiseFunction(1, {{Interval{a, b}, 1.0}});
}

PiecewiseFunction indicator_polygon(const std::vector<Point2>& vertices, Complex value) {
  if (!is_convex_ccw(vertices))
    throw Error(ErrorKind::InvalidGeometry, "polygon must be convex and counter-clockwise");
  auto poly = make_polygon(vertices);
  if (!poly) throw Error(ErrorKind::InvalidGeometry, "degenerate polygon");
  return PiecewiseFunction(2, {{std::move(*poly), value}});
}

PiecewiseFunction steps(const std::vector<Rational>& breaks, const std::vector<Complex>& values) {
  if (breaks.size() < 2 || values.size() + 1 != breaks.size())
    throw Error(ErrorKind::InvalidGeometry, "steps needs n+1 breakpoints for n values");
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1])) throw Error(ErrorKind::InvalidGeometry, "breakpoints must increase");
    cells.push_back({Interval{breaks[i], breaks[i + 1]}, values[i]});
  }
  return PiecewiseFunction(1, std::move(cells));
}

PiecewiseFunction haar2d(int kind) {
  if (kind < 1 || kind > 3) throw Error(ErrorKind::IndexOutOfRange, "haar2d kind must be 1, 2 or 3");
  const Rational h = make_rational(1, 2);
  std::vector<Cell> cells;
  for (int ix = 0; ix < 2; ++ix)
    for (int iy = 0; iy < 2; ++iy) {
      const double sx = ix == 0 ? 1.0 : -1.0;
      const double sy = iy == 0 ? 1.0 : -1.0;
      const double v = kind == 1 ? sx : kind == 2 ? sy : sx * sy;
      cells.push_back({rectangle(h * ix, h * iy, h * (ix + 1), h * (iy + 1)), v});
    }
  return PiecewiseFunction(2, std::move(cells));
}

PiecewiseFunction random_step(std::uint64_t seed, std::size_t cell_count, const Box& support) {
  const std::size_t d = support.lo.size();
  require_supported_dimension(d);
  if (cell_count == 0) return PiecewiseFunction(static_cast<int>(d));
  if (cell_count > kMaxRandomCells)
    throw Error(ErrorKind::InvalidGeometry, "random step functions have at most " + std::to_string(kMaxRandomCells) + " cells");
  for (std::size_t k = 0; k < d; ++k)
    if (!(support.lo[k] < support.hi[k])) throw Error(ErrorKind::InvalidGeometry, "empty support box");
  StepRng rng(seed);
  std::vector<Cell> cells;
  const auto xs = random_breaks(rng, support.lo[0], support.hi[0], cell_count);
  for (std::size_t i = 0; i < cell_count; ++i) {
    const Complex v = random_value(rng);
    if (d == 1) {
      cells.push_back({Interval{xs[i], xs[i + 1]}, v});
    } else {
      const auto ys = random_breaks(rng, support.lo[1], support.hi[1], 3);
      cells.push_back({rectangle(xs[i], ys[1], xs[i + 1], ys[2]), v});
    }
  }
  return PiecewiseFunction(static_cast<int>(d), std::move(cells));
}

}  // namespace superframe
