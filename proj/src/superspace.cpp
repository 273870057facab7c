#include "superframe/superspace.hpp"

#include <cmath>

namespace superframe {
namespace {

void require_compatible(const SuperVector& g, const CosetSystem& cs) {
  if (g.size() != cs.order()) throw Error(ErrorKind::ShapeMismatch, "super vector length differs from p");
  if (static_cast<std::size_t>(g.dim()) != cs.dim()) throw Error(ErrorKind::ShapeMismatch, "super vector dimension");
}

void require_same_shape(const SuperVector& a, const SuperVector& b) {
  if (a.size() != b.size() || a.dim() != b.dim()) throw Error(ErrorKind::ShapeMismatch, "super vectors differ in shape");
}

}  // namespace

SuperVector::SuperVector(std::vector<PiecewiseFunction> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorKind::ShapeMismatch, "super vector needs at least one component");
  for (const auto& c : components_)
    if (c.dim() != components_.front().dim()) throw Error(ErrorKind::ShapeMismatch, "components of mixed dimension");
}

SuperVector SuperVector::zero(std::size_t p, int dim) {
  return SuperVector(std::vector<PiecewiseFunction>(p, PiecewiseFunction(dim)));
}

std::optional<Box> SuperVector::support_box() const {
  std::optional<Box> box;
  for (const auto& c : components_)
    if (auto b = c.support_box()) box = box ? box_union(*box, *b) : *b;
  return box;
}

SuperVector embed_S(const PiecewiseFunction& f, const CosetSystem& cs) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(cs.order()));
  return SuperVector(std::vector<PiecewiseFunction>(cs.order(), f.scaled(scale)));
}

SuperVector embed_Sprime(const PiecewiseFunction& f, const CosetSystem& cs) {
  require_supported_dimension(cs.dim());
  const double scale = 1.0 / static_cast<double>(cs.order());
  const AffineUnitary op{to_rational(cs.P()), RatVector(cs.dim(), Rational(0)), Complex(scale)};
  return SuperVector(std::vector<PiecewiseFunction>(cs.order(), op.apply(f)));
}

SuperVector super_translate(const SuperVector& g, const IntVector& k, Variant variant, const CosetSystem& cs) {
  require_compatible(g, cs);
  const RatVector shift = variant == Variant::Base ? cs.P_inverse() * to_rational(k) : to_rational(k);
  std::vector<PiecewiseFunction> out;
  out.reserve(g.size());
  for (std::size_t q = 0; q < g.size(); ++q) {
    AffineUnitary op = AffineUnitary::translation(shift);
    op.amplitude = cs.character(k, q);
    out.push_back(op.apply(g[q]));
  }
  return SuperVector(std::move(out));
}

SuperVector super_dilate(const SuperVector& g, int j, Variant variant, const CosetSystem& cs) {
  require_compatible(g, cs);
  require_supported_dimension(cs.dim());
  if (j == 0) return g;
  const IntMatrix& m = variant == Variant::Base ? cs.M() : cs.M_prime();
  const AffineUnitary op = AffineUnitary::dilation(m, j);
  const Permutation source = power(cs.sigma_star(), -j);
  std::vector<PiecewiseFunction> out;
  out.reserve(g.size());
  for (std::size_t q = 0; q < g.size(); ++q) out.push_back(op.apply(g[source[q]]));
  return SuperVector(std::move(out));
}

SuperVector super_UP(const SuperVector& g, const CosetSystem& cs) {
  require_compatible(g, cs);
  require_supported_dimension(cs.dim());
  const AffineUnitary op = AffineUnitary::scale_P(cs.P());
  std::vector<PiecewiseFunction> out;
  out.reserve(g.size());
  for (const auto& c : g.components()) out.push_back(op.apply(c));
  return SuperVector(std::move(out));
}

std::vector<PiecewiseFunction> decompose(const SuperVector& g, const CosetSystem& cs) {
  require_compatible(g, cs);
  require_supported_dimension(cs.dim());
  const std::size_t p = cs.order();
  double scale = 0.0;
  for (const auto& c : g.components()) scale = std::max(scale, c.max_abs_value());
  const double tol = kDecomposePruneTolerance * scale;
  const double sqrt_p = std::sqrt(static_cast<double>(p));

  // (p^{-1/2} f_r(P^-1(x - P theta_r)))_r = conj(H) (g_q(x))_q, since H is unitary.
  std::vector<PiecewiseFunction> parts;
  parts.reserve(p);
  std::vector<Complex> row(p);
  for (std::size_t r = 0; r < p; ++r) {
    for (std::size_t q = 0; q < p; ++q) row[q] = std::conj(cs.H()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(q)));
    const PiecewiseFunction h = prune(linear_combination(row, g.components()), tol);
    // f_r(y) = sqrt(p) h_r(P y + P theta_r): cells move by y = P^-1 x - theta_r.
    const AffineUnitary undo{cs.P_inverse(), subtract(RatVector(cs.dim(), Rational(0)), cs.theta()[r]), Complex(sqrt_p)};
    parts.push_back(undo.apply(h));
  }
  return parts;
}

SuperVector reassemble(const std::vector<PiecewiseFunction>& parts, const CosetSystem& cs) {
  if (parts.size() != cs.order()) throw Error(ErrorKind::ShapeMismatch, "reassemble needs p parts");
  SuperVector acc = SuperVector::zero(cs.order(), static_cast<int>(cs.dim()));
  for (std::size_t r = 0; r < parts.size(); ++r) {
    if (parts[r].is_zero()) continue;
    acc = super_add(acc, super_translate(embed_Sprime(parts[r], cs), cs.p_theta(r), Variant::Primed, cs));
  }
  return acc;
}

Complex super_inner_product(const SuperVector& a, const SuperVector& b) {
  require_same_shape(a, b);
  Complex s = 0.0;
  for (std::size_t q = 0; q < a.size(); ++q) s += inner_product(a[q], b[q]);
  return s;
}

double super_norm(const SuperVector& g) {
  double s = 0.0;
  for (const auto& c : g.components()) s += c.norm_squared();
  return std::sqrt(s);
}

SuperVector super_add(const SuperVector& a, const SuperVector& b) {
  require_same_shape(a, b);
  std::vector<PiecewiseFunction> out;
  out.reserve(a.size());
  for (std::size_t q = 0; q < a.size(); ++q) out.push_back(add(a[q], b[q]));
  return SuperVector(std::move(out));
}

SuperVector super_subtract(const SuperVector& a, const SuperVector& b) {
  require_same_shape(a, b);
  std::vector<PiecewiseFunction> out;
  out.reserve(a.size());
  for (std::size_t q = 0; q < a.size(); ++q) out.push_back(subtract(a[q], b[q]));
  return SuperVector(std::move(out));
}

SuperVector super_scaled(const SuperVector& g, Complex c) {
  std::vector<PiecewiseFunction> out;
  out.reserve(g.size());
  for (const auto& comp : g.components()) out.push_back(comp.scaled(c));
  return SuperVector(std::move(out));
}

double super_max_abs_difference(const SuperVector& a, const SuperVector& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  for (std::size_t q = 0; q < a.size(); ++q) worst = std::max(worst, max_abs_difference(a[q], b[q]));
  return worst;
}

}  // namespace superframe
