#pragma once

// The direct sum H = L^2(R^d) (+) ... (+) L^2(R^d) (p copies) and the
// super-affine operators acting on it.

#include <vector>

#include "superframe/funcspace.hpp"
#include "superframe/quotient.hpp"

namespace superframe {

/// Element of H; component q is the q-th copy of L^2(R^d).
class SuperVector {
 public:
  explicit SuperVector(std::vector<PiecewiseFunction> components);
  static SuperVector zero(std::size_t p, int dim);

  std::size_t size() const noexcept { return components_.size(); }
  int dim() const noexcept { return components_.front().dim(); }
  const PiecewiseFunction& operator[](std::size_t q) const { return components_.at(q); }
  const std::vector<PiecewiseFunction>& components() const noexcept { return components_; }

  std::optional<Box> support_box() const;

 private:
  std::vector<PiecewiseFunction> components_;
};

/// Which affine structure an operator belongs to: the one built on M with
/// translations P^-1 k, or the conjugated one built on M' = P M P^-1 with
/// integer translations.
enum class Variant { Base, Primed };

/// S f = p^{-1/2} (f, ..., f).
SuperVector embed_S(const PiecewiseFunction& f, const CosetSystem& cs);

/// S' f = p^{-1} (f(P^-1 x), ..., f(P^-1 x)).
SuperVector embed_Sprime(const PiecewiseFunction& f, const CosetSystem& cs);

/// Base: component q -> e^{2 pi i k.theta*_q} T_{P^-1 k} g_q.
/// Primed: component q -> e^{2 pi i k.theta*_q} T_k g_q.
SuperVector super_translate(const SuperVector& g, const IntVector& k, Variant variant, const CosetSystem& cs);

/// j-th power of the super dilation: output component q is D^j (resp. D'^j)
/// applied to input component (sigma*)^{-j}(q).
SuperVector super_dilate(const SuperVector& g, int j, Variant variant, const CosetSystem& cs);

/// Componentwise U_P.
SuperVector super_UP(const SuperVector& g, const CosetSystem& cs);

/// The unique (f_0, ..., f_{p-1}) with g = sum_r T'_{P theta_r} S' f_r.
/// Cells whose magnitude falls below kDecomposePruneTolerance times the
/// largest input value are treated as round-off and dropped.
std::vector<PiecewiseFunction> decompose(const SuperVector& g, const CosetSystem& cs);
inline constexpr double kDecomposePruneTolerance = 1e-12;

/// sum_r T'_{P theta_r} S' f_r.
SuperVector reassemble(const std::vector<PiecewiseFunction>& parts, const CosetSystem& cs);

Complex super_inner_product(const SuperVector& a, const SuperVector& b);
double super_norm(const SuperVector& g);

SuperVector super_add(const SuperVector& a, const SuperVector& b);
SuperVector super_subtract(const SuperVector& a, const SuperVector& b);
SuperVector super_scaled(const SuperVector& g, Complex c);

/// Largest componentwise ess-sup difference.
double super_max_abs_difference(const SuperVector& a, const SuperVector& b);

}  // namespace superframe
