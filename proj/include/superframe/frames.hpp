#pragma once

// Truncated affine, oversampled and super-affine systems: enumeration, frame
// sums, Gram matrices, bound estimates, and the termwise identities that tie
// the super systems back to L^2(R^d).

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "superframe/superspace.hpp"

namespace superframe {

class WaveletFamily {
 public:
  explicit WaveletFamily(std::vector<PiecewiseFunction> psi);

  std::size_t size() const noexcept { return psi_.size(); }
  int dim() const noexcept { return psi_.front().dim(); }
  const PiecewiseFunction& operator[](std::size_t i) const { return psi_.at(i); }
  const std::vector<PiecewiseFunction>& members() const noexcept { return psi_; }

 private:
  std::vector<PiecewiseFunction> psi_;
};

/// Desk-scale truncation: scales j_min..j_max, translation indices with
/// |k_i| <= k_max (unbounded when k_max is empty, in which case only the
/// support-derived window applies), wavelets [wavelet_begin, wavelet_end).
struct TruncationSpec {
  int j_min = 0;
  int j_max = 0;
  std::optional<long> k_max;
  std::size_t wavelet_begin = 0;
  std::optional<std::size_t> wavelet_end;

  void validate() const;
};

enum class SystemTag { Base, Oversampled, Super, SuperPrimed, Corollary };

struct SystemKind {
  SystemTag tag = SystemTag::Base;
  std::size_t r = 0;  // SuperPrimed and Corollary only

  static SystemKind base() { return {SystemTag::Base, 0}; }
  static SystemKind oversampled() { return {SystemTag::Oversampled, 0}; }
  static SystemKind super() { return {SystemTag::Super, 0}; }
  static SystemKind super_primed(std::size_t r) { return {SystemTag::SuperPrimed, r}; }
  static SystemKind corollary(std::size_t r) { return {SystemTag::Corollary, r}; }

  bool lives_in_super_space() const { return tag == SystemTag::Super || tag == SystemTag::SuperPrimed; }
  std::string name() const;
};

/// (i, j, k): wavelet index, scale, translation index. For SuperPrimed and
/// Corollary k is the free integer index m.
struct ElementIndex {
  std::size_t i = 0;
  int j = 0;
  IntVector k;
};

using SystemElement = std::variant<PiecewiseFunction, SuperVector>;

/// Base:         D^j T_k psi_i
/// Oversampled:  p^{-1/2} D^j T_{P^-1 k} psi_i
/// Super:        D^j T_{P^-1 k} S psi_i                    (bold operators)
/// SuperPrimed:  D'^j T'_{P theta_{sigma^j(r)} + P m} S' psi_i
/// Corollary:    D^j T_{theta_{sigma^j(r)} + m} psi_i
SystemElement system_element(const SystemKind& kind, int j, const IntVector& k, std::size_t i, const CosetSystem& cs,
                             const WaveletFamily& psi);

struct IndexSet {
  std::vector<ElementIndex> indices;  // lexicographic (i, j, k)
  bool clipped = false;               // the k box cut off potentially nonzero terms
  std::vector<ElementIndex> outside;  // window indices cut off by the k box
};

/// Every index in the truncation box. Requires k_max.
IndexSet box_indices(const SystemKind& kind, const TruncationSpec& trunc, const CosetSystem& cs,
                     const WaveletFamily& psi);

/// Indices whose element support can meet `support` (closed box), restricted
/// to the truncation box when k_max is set.
IndexSet window_indices(const SystemKind& kind, const TruncationSpec& trunc, const Box& support, const CosetSystem& cs,
                        const WaveletFamily& psi);

Complex element_inner_product(const SystemElement& a, const SystemElement& b);
double element_norm_squared(const SystemElement& x);

/// Clipped mass above this is reported as a truncation warning.
inline constexpr double kClippedMassTolerance = 1e-20;

struct FrameSum {
  double value = 0.0;
  double norm_squared = 0.0;  // ||x||^2
  std::size_t terms = 0;
  double clipped_mass = 0.0;  // sum of |<x, e>|^2 over window terms outside the k box
  bool clipped = false;       // clipped_mass > kClippedMassTolerance
};

/// sum |<x, e>|^2 over the truncated system, in lexicographic (i, j, k) order.
FrameSum frame_sum(const SystemElement& x, const SystemKind& kind, const TruncationSpec& trunc, const CosetSystem& cs,
                   const WaveletFamily& psi);

inline constexpr std::size_t kDefaultGramLimit = 5000;
/// Extremal eigenvalues are only extracted up to this size.
inline constexpr std::size_t kEigenvalueLimit = 2000;

struct GramResult {
  std::vector<ElementIndex> indices;
  Eigen::MatrixXcd G;
  double max_off_diagonal = 0.0;
  double max_diagonal_deviation = 0.0;
  std::optional<double> min_eigenvalue;
  std::optional<double> max_eigenvalue;
};

GramResult gram_matrix(const SystemKind& kind, const TruncationSpec& trunc, const CosetSystem& cs,
                       const WaveletFamily& psi, std::size_t limit = kDefaultGramLimit);

struct BoundsEstimate {
  double lower = 0.0;  // min over the test set of frame_sum / ||x||^2
  double upper = 0.0;  // max of the same ratio
  std::vector<double> ratios;
  bool clipped = false;
};

/// Inner/outer estimates of the frame bounds of the truncated system on a
/// test set; not the bounds of the infinite system.
BoundsEstimate frame_bounds_estimate(const SystemKind& kind, const TruncationSpec& trunc, const CosetSystem& cs,
                                     const WaveletFamily& psi, const std::vector<SystemElement>& test_set);

struct Lemma3Cell {
  int j = 0;
  IntVector k;
  std::size_t r = 0;
  std::size_t l = 0;
  bool delta = false;  // l == sigma^j(r)
  Complex lhs;
  Complex rhs;
};

struct Lemma3Report {
  std::size_t cells = 0;
  std::size_t delta_cells = 0;     // cells with l == sigma^j(r)
  double max_residual = 0.0;       // max |lhs - rhs|
  double max_zero_branch = 0.0;    // max |lhs| over cells with l != sigma^j(r)
  Lemma3Cell worst;
};

/// <D'^j T'_k S'f, T'_{P theta_r} S'g> against delta_{l,sigma^j(r)} <D^j T_{P^-1 k} f, T_{theta_r} g>
/// over j in [j_min, j_max], |k_i| <= k_max, all r.
Lemma3Report verify_lemma3(const CosetSystem& cs, const PiecewiseFunction& f, const PiecewiseFunction& g, int j_min,
                           int j_max, long k_max);

struct EqegReport {
  std::size_t r = 0;
  std::size_t terms = 0;
  double super_sum = 0.0;               // left side, over X_r(S' Psi) against T'_{P theta_r} S' f
  double base_sum = 0.0;                // right side, corollary system against T_{theta_r} f
  double max_coefficient_residual = 0.0;
  double max_termwise_residual = 0.0;   // max ||L|^2 - |R|^2|
  double aggregate_residual = 0.0;
  bool clipped = false;
};

EqegReport verify_eqeg(const CosetSystem& cs, const WaveletFamily& psi, std::size_t r, const PiecewiseFunction& f,
                       const TruncationSpec& trunc);

PiecewiseFunction project_first(const SuperVector& g);

struct ProjectionReport {
  std::size_t elements = 0;
  std::size_t geometry_mismatches = 0;
  double max_value_residual = 0.0;
  std::optional<ElementIndex> worst;
};

/// Component 0 of each super element against the matching oversampled element.
ProjectionReport verify_projection(const CosetSystem& cs, const WaveletFamily& psi, const TruncationSpec& trunc);

/// max over j in [j_min, j_max] of |closed-form D^j g - iterated single steps|.
double power_consistency_residual(const SuperVector& g, int j_min, int j_max, Variant variant, const CosetSystem& cs);

}  // namespace superframe
