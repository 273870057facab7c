#pragma once

// Finite-group apparatus attached to a dilation/oversampling pair (M, P):
// admissibility, coset and dual-coset transversals, the permutations induced
// by M and (PMP^-1)^T, and the duality matrix of P^-1 Z^d / Z^d.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "superframe/intlin.hpp"

namespace superframe {

using Permutation = std::vector<std::size_t>;

/// Largest quotient order we are willing to enumerate.
inline constexpr std::size_t kMaxQuotientOrder = 1u << 16;

/// Throws NotExpansive unless every eigenvalue of M has modulus > 1 + tol.
void check_expansive(const IntMatrix& m, double tol = 1e-9);

struct AdmissibilityReport {
  bool admissible = false;
  bool m_prime_integral = false;
  bool intersection_is_integer_lattice = false;
  RatMatrix m_prime;  // P M P^-1, integral iff m_prime_integral
  LatticeBasis intersection;
  Integer p;
};

/// Decides whether P is an admissible oversampling matrix for M.
/// Throws SingularMatrix, NotExpansive, ShapeMismatch or DimensionLimit.
AdmissibilityReport check_admissible(const IntMatrix& m, const IntMatrix& p);

/// Representatives of P^-1 Z^d / Z^d in [0,1)^d, ordered lexicographically by
/// their Smith digits; the first one is 0.
std::vector<RatVector> coset_representatives(const IntMatrix& p);

/// Representatives of (P^T)^-1 Z^d / Z^d, same conventions.
std::vector<RatVector> dual_representatives(const IntMatrix& p);

/// Lookup from a reduced representative to its index.
class RepresentativeIndex {
 public:
  explicit RepresentativeIndex(const std::vector<RatVector>& reps);
  /// Index of the class of x mod Z^d, if it is one of the representatives.
  std::optional<std::size_t> find(const RatVector& x) const;

 private:
  std::map<RatVector, std::size_t> index_;
};

/// r -> index of (A theta_r mod Z^d). Throws NotAPermutation when A does not
/// act bijectively on the given transversal.
Permutation induced_permutation(const IntMatrix& a, const std::vector<RatVector>& reps);

Permutation sigma(const IntMatrix& m, const std::vector<RatVector>& theta);
Permutation sigma_star(const IntMatrix& m_prime, const std::vector<RatVector>& theta_star);

Permutation inverse(const Permutation& perm);
/// perm^j for any integer j.
Permutation power(const Permutation& perm, int j);

/// H[r][q] = p^{-1/2} exp(2 pi i (P theta_r) . theta*_q), phases reduced mod 1
/// exactly before evaluation.
Eigen::MatrixXcd duality_matrix(const IntMatrix& p, const std::vector<RatVector>& theta,
                                const std::vector<RatVector>& theta_star);

struct Residue {
  std::size_t index;  // l with P^-1 k = theta_l mod Z^d
  IntVector m;        // k = P theta_l + P m
};

/// Everything derived from an admissible pair. Immutable once built.
class CosetSystem {
 public:
  /// Throws NotAdmissible if P is not admissible for M.
  static CosetSystem build(const IntMatrix& m, const IntMatrix& p);

  std::size_t dim() const noexcept { return m_.rows(); }
  std::size_t order() const noexcept { return theta_.size(); }
  const IntMatrix& M() const noexcept { return m_; }
  const IntMatrix& P() const noexcept { return p_; }
  const IntMatrix& M_prime() const noexcept { return m_prime_; }
  const RatMatrix& P_inverse() const noexcept { return p_inverse_; }

  const std::vector<RatVector>& theta() const noexcept { return theta_; }
  const std::vector<RatVector>& theta_star() const noexcept { return theta_star_; }
  /// P theta_r, always an integer vector.
  const IntVector& p_theta(std::size_t r) const { return p_theta_.at(r); }
  const Permutation& sigma() const noexcept { return sigma_; }
  const Permutation& sigma_star() const noexcept { return sigma_star_; }
  const Eigen::MatrixXcd& H() const noexcept { return h_; }

  Residue residue_index(const IntVector& k) const;

  /// exp(2 pi i k . theta*_q), exact rational phase reduced mod 1.
  Complex character(const IntVector& k, std::size_t q) const;

  /// max |H H* - I|.
  double unitarity_residual() const;
  /// max |H[sigma(r)][q] - H[r][sigma*(q)]|.
  double compatibility_residual() const;

  /// Hex FNV-1a digest of M, P and the representative list.
  std::string fingerprint() const;

 private:
  CosetSystem() = default;

  IntMatrix m_, p_, m_prime_;
  RatMatrix p_inverse_;
  std::vector<RatVector> theta_, theta_star_;
  std::vector<IntVector> p_theta_;
  Permutation sigma_, sigma_star_;
  Eigen::MatrixXcd h_;
  std::optional<RepresentativeIndex> theta_index_;
};

/// FNV-1a over the bytes of text, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace superframe
