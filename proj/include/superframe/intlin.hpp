#pragma once

// Exact integer and rational linear algebra for lattice computations.
// Everything here is pure and tolerance-free.

#include <cstddef>

#include "superframe/matrix.hpp"

namespace superframe {

/// Upper bound on the dimension accepted by the lattice routines.
inline constexpr std::size_t kDefaultDimensionLimit = 4;

void check_dimension(std::size_t d, std::size_t limit = kDefaultDimensionLimit);

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& a);
Rational determinant(const RatMatrix& a);

/// Exact inverse; throws SingularMatrix when det = 0.
RatMatrix inverse_rational(const IntMatrix& a);
RatMatrix inverse(const RatMatrix& a);

struct SmithForm {
  IntMatrix U;  // unimodular, row operations
  IntMatrix S;  // diagonal, s_1 | s_2 | ... | s_d, s_i > 0
  IntMatrix V;  // unimodular, column operations
};

/// U * A * V == S exactly. Requires det A != 0.
SmithForm smith_normal_form(const IntMatrix& a);

struct ColumnHermiteForm {
  IntMatrix H;       // A * V, lower column echelon form
  IntMatrix V;       // unimodular
  std::size_t rank;  // columns [rank, n) of H are zero
};

/// Column Hermite form of an arbitrary integer matrix. Pivots are positive and
/// entries left of a pivot are reduced into [0, pivot).
ColumnHermiteForm column_hermite_form(const IntMatrix& a);

/// Full-rank lattice in Q^d, stored canonically as (1/denominator) * H Z^d with
/// H in column Hermite form and gcd(denominator, content(H)) = 1.
class LatticeBasis {
 public:
  /// Columns of `basis` generate the lattice; must be square and nonsingular.
  explicit LatticeBasis(const RatMatrix& basis);

  static LatticeBasis integer_lattice(std::size_t d);

  std::size_t dim() const noexcept { return hermite_.rows(); }
  const Integer& denominator() const noexcept { return denominator_; }
  const IntMatrix& hermite() const noexcept { return hermite_; }

  /// Canonical basis, columns are generators.
  RatMatrix basis() const;

  bool contains(const RatVector& x) const;

  friend bool operator==(const LatticeBasis& a, const LatticeBasis& b) {
    return a.denominator_ == b.denominator_ && a.hermite_ == b.hermite_;
  }

 private:
  LatticeBasis(Integer denominator, IntMatrix integral);

  Integer denominator_;
  IntMatrix hermite_;
};

LatticeBasis lattice_intersection(const LatticeBasis& a, const LatticeBasis& b);
bool lattice_equal(const LatticeBasis& a, const LatticeBasis& b);

}  // namespace superframe
