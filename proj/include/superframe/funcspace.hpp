#pragma once

// Exact finitely-supported piecewise-constant functions on R^d, d in {1, 2}.
// Cell geometry is exact rational; cell values are complex doubles. The
// dilation, translation and P-rescaling unitaries map the class to itself.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "superframe/geometry.hpp"

namespace superframe {

/// Value tolerance used when merging cells and comparing functions.
inline constexpr double kValueTolerance = 1e-12;

struct Cell {
  Region region;
  Complex value;
};

class PiecewiseFunction {
 public:
  /// The zero function on R^dim.
  explicit PiecewiseFunction(int dim);

  /// Cells must be pairwise disjoint and match dim; empty regions and exact
  /// zero values are dropped and the rest sorted.
  PiecewiseFunction(int dim, std::vector<Cell> cells);

  int dim() const noexcept { return dim_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  bool is_zero() const noexcept { return cells_.empty(); }

  std::optional<Box> support_box() const;
  double norm_squared() const;
  double norm() const;
  double max_abs_value() const;

  /// Point evaluation; cell boundaries are a null set, so this is an a.e. value.
  Complex operator()(const RatVector& x) const;

  PiecewiseFunction scaled(Complex c) const;

 private:
  int dim_;
  std::vector<Cell> cells_;
};

void require_supported_dimension(std::size_t d);

/// Affine unitary descriptor: f -> amplitude * f(L^-1 (x - shift)), i.e. the
/// cells are pushed forward by x -> L x + shift.
struct AffineUnitary {
  RatMatrix linear;
  RatVector shift;
  Complex amplitude{1.0, 0.0};

  static AffineUnitary identity(std::size_t d);
  /// D^j f(x) = |det M|^{j/2} f(M^j x).
  static AffineUnitary dilation(const IntMatrix& m, int j);
  /// T_u f(x) = f(x - u).
  static AffineUnitary translation(const RatVector& u);
  /// U_P f(x) = sqrt(p) f(P x).
  static AffineUnitary scale_P(const IntMatrix& p);
  static AffineUnitary amplitude_only(std::size_t d, Complex c);

  /// (*this) after `inner`.
  AffineUnitary after(const AffineUnitary& inner) const;

  PiecewiseFunction apply(const PiecewiseFunction& f) const;
};

/// |det M|^{j/2} as a double, computed as sqrt(|det M|^j).
double dilation_amplitude(const Integer& det, int j);

PiecewiseFunction dilate(const PiecewiseFunction& f, const IntMatrix& m, int j);
PiecewiseFunction translate(const PiecewiseFunction& f, const RatVector& u);
PiecewiseFunction scale_P(const PiecewiseFunction& f, const IntMatrix& p);

/// <f, g> = integral of f * conj(g).
Complex inner_product(const PiecewiseFunction& f, const PiecewiseFunction& g);

/// sum_i coeffs[i] * fs[i] on the common refinement of the cells.
PiecewiseFunction linear_combination(std::span<const Complex> coeffs, std::span<const PiecewiseFunction> fs);
PiecewiseFunction add(const PiecewiseFunction& f, const PiecewiseFunction& g);
PiecewiseFunction subtract(const PiecewiseFunction& f, const PiecewiseFunction& g);

/// Drops cells with |value| <= tol.
PiecewiseFunction prune(const PiecewiseFunction& f, double tol);

/// Canonical form: zero cells pruned, cells sorted, and in d = 1 adjacent
/// cells whose values agree within tol merged.
PiecewiseFunction canonical(const PiecewiseFunction& f, double tol = kValueTolerance);

/// Essential sup of |f - g| and ||f - g||, both from the exact overlay.
double max_abs_difference(const PiecewiseFunction& f, const PiecewiseFunction& g);
double distance(const PiecewiseFunction& f, const PiecewiseFunction& g);

/// Canonical forms have identical cell geometry (exact) and cellwise values
/// within value_tol.
bool same_geometry(const PiecewiseFunction& f, const PiecewiseFunction& g);
bool functions_equal(const PiecewiseFunction& f, const PiecewiseFunction& g, double value_tol = kValueTolerance);

// Builders.
PiecewiseFunction haar();
PiecewiseFunction indicator_interval(const Rational& a, const Rational& b);
/// Vertices must describe a convex counter-clockwise polygon.
PiecewiseFunction indicator_polygon(const std::vector<Point2>& vertices, Complex value = 1.0);
/// d = 1: value[i] on [breaks[i], breaks[i+1]).
PiecewiseFunction steps(const std::vector<Rational>& breaks, const std::vector<Complex>& values);
/// Separable Haar wavelets on [0,1)^2 for M = 2I: kind 1 = psi x phi,
/// 2 = phi x psi, 3 = psi x psi.
PiecewiseFunction haar2d(int kind);

inline constexpr std::size_t kMaxRandomCells = 64;

/// Deterministic random step function with cell_count cells inside the box.
/// d = 1: random breakpoints; d = 2: vertical strips with random heights.
PiecewiseFunction random_step(std::uint64_t seed, std::size_t cell_count, const Box& support);

/// Seeded stream over std::mt19937_64 with range mappings that do not depend
/// on the standard library's distribution implementations.
class StepRng {
 public:
  explicit StepRng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform-ish integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }
  /// Double in [-1, 1) with 53 random bits.
  double symmetric_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-52 - 1.0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace superframe
