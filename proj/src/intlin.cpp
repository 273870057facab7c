#include "superframe/intlin.hpp"

#include <utility>

namespace superframe {
namespace {

void require_square(const auto& a, const char* what) {
  if (!a.square() || a.rows() == 0) throw Error(ErrorKind::ShapeMismatch, std::string(what) + " needs a square matrix");
}

void swap_rows(IntMatrix& a, std::size_t i, std::size_t k) {
  if (i == k) return;
  for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(i, j), a(k, j));
}

void swap_cols(IntMatrix& a, std::size_t j, std::size_t k) {
  if (j == k) return;
  for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a(i, j), a(i, k));
}

// row_i += q * row_k
void add_row(IntMatrix& a, std::size_t i, std::size_t k, const Integer& q) {
  for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) += q * a(k, j);
}

// col_j += q * col_k
void add_col(IntMatrix& a, std::size_t j, std::size_t k, const Integer& q) {
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) += q * a(i, k);
}

// (col_c, col_j) <- (x col_c + y col_j, u col_c + v col_j)
void combine_cols(IntMatrix& a, std::size_t c, std::size_t j, const Integer& x, const Integer& y,
                  const Integer& u, const Integer& v) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer ac = a(i, c);
    Integer aj = a(i, j);
    a(i, c) = x * ac + y * aj;
    a(i, j) = u * ac + v * aj;
  }
}

Integer lcm_of_denominators(const RatMatrix& a) {
  Integer l = 1;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) l = lcm(l, Integer(a(i, j).get_den()));
  return l;
}

}  // namespace

void check_dimension(std::size_t d, std::size_t limit) {
  if (d == 0 || d > limit)
    throw Error(ErrorKind::DimensionLimit,
                "dimension " + std::to_string(d) + " outside [1, " + std::to_string(limit) + "]");
}

Integer determinant(const IntMatrix& a) {
  require_square(a, "determinant");
  const std::size_t n = a.rows();
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      swap_rows(m, k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rational determinant(const RatMatrix& a) {
  require_square(a, "determinant");
  const Integer l = lcm_of_denominators(a);
  IntMatrix scaled(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) scaled(i, j) = Rational(a(i, j) * l).get_num();
  Integer scale = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) scale *= l;
  Rational det(determinant(scaled), scale);
  det.canonicalize();
  return det;
}

RatMatrix inverse(const RatMatrix& a) {
  require_square(a, "inverse");
  const std::size_t n = a.rows();
  RatMatrix m = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m(pivot, c) == 0) ++pivot;
    if (pivot == n) throw Error(ErrorKind::SingularMatrix, "matrix " + format_matrix(a) + " has det 0");
    if (pivot != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(c, j), m(pivot, j));
        std::swap(inv(c, j), inv(pivot, j));
      }
    const Rational scale = 1 / m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) *= scale;
      inv(c, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

RatMatrix inverse_rational(const IntMatrix& a) { return inverse(to_rational(a)); }

SmithForm smith_normal_form(const IntMatrix& a) {
  require_square(a, "smith_normal_form");
  if (determinant(a) == 0) throw Error(ErrorKind::SingularMatrix, "matrix " + format_matrix(a) + " has det 0");
  const std::size_t n = a.rows();
  IntMatrix s = a;
  IntMatrix u = IntMatrix::identity(n);
  IntMatrix v = IntMatrix::identity(n);

  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Smallest nonzero magnitude in the trailing block becomes the pivot.
      std::size_t pi = n, pj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (s(i, j) != 0 && (pi == n || abs(s(i, j)) < abs(s(pi, pj)))) {
            pi = i;
            pj = j;
          }
      swap_rows(s, t, pi);
      swap_rows(u, t, pi);
      swap_cols(s, t, pj);
      swap_cols(v, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (s(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
        add_row(s, i, t, -q);
        add_row(u, i, t, -q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
        add_col(s, j, t, -q);
        add_col(v, j, t, -q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility chain: fold any offending row into row t and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < n && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
            add_row(s, t, i, 1);
            add_row(u, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (s(t, t) < 0) {
      add_row(s, t, t, -2);
      add_row(u, t, t, -2);
    }
  }
  return {std::move(u), std::move(s), std::move(v)};
}

ColumnHermiteForm column_hermite_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix h = a;
  IntMatrix v = IntMatrix::identity(n);
  std::size_t c = 0;
  for (std::size_t i = 0; i < m && c < n; ++i) {
    for (std::size_t j = c + 1; j < n; ++j) {
      if (h(i, j) == 0) continue;
      Integer g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), h(i, c).get_mpz_t(), h(i, j).get_mpz_t());
      const Integer a_g = h(i, c) / g;
      const Integer b_g = h(i, j) / g;
      combine_cols(h, c, j, x, y, -b_g, a_g);
      combine_cols(v, c, j, x, y, -b_g, a_g);
    }
    if (h(i, c) == 0) continue;
    if (h(i, c) < 0) {
      add_col(h, c, c, -2);
      add_col(v, c, c, -2);
    }
    for (std::size_t j = 0; j < c; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, c).get_mpz_t());
      if (q == 0) continue;
      add_col(h, j, c, -q);
      add_col(v, j, c, -q);
    }
    ++c;
  }
  return {std::move(h), std::move(v), c};
}

LatticeBasis::LatticeBasis(const RatMatrix& basis) {
  require_square(basis, "LatticeBasis");
  if (determinant(basis) == 0)
    throw Error(ErrorKind::SingularMatrix, "lattice basis " + format_matrix(basis) + " is not full rank");
  const Integer l = lcm_of_denominators(basis);
  IntMatrix integral(basis.rows(), basis.cols());
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < basis.cols(); ++j) integral(i, j) = Rational(basis(i, j) * l).get_num();
  *this = LatticeBasis(l, std::move(integral));
}

LatticeBasis::LatticeBasis(Integer denominator, IntMatrix integral) {
  ColumnHermiteForm form = column_hermite_form(integral);
  IntMatrix h = std::move(form.H);
  Integer g = denominator;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) g = gcd(g, h(i, j));
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) /= g;
  denominator_ = denominator / g;
  hermite_ = std::move(h);
}

LatticeBasis LatticeBasis::integer_lattice(std::size_t d) {
  return LatticeBasis(Integer(1), IntMatrix::identity(d));
}

RatMatrix LatticeBasis::basis() const {
  RatMatrix b = to_rational(hermite_);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) /= denominator_;
  return b;
}

bool LatticeBasis::contains(const RatVector& x) const {
  if (x.size() != dim()) throw Error(ErrorKind::ShapeMismatch, "lattice membership");
  // Forward substitution on the lower-triangular Hermite basis.
  const std::size_t d = dim();
  RatVector target(d);
  for (std::size_t i = 0; i < d; ++i) target[i] = x[i] * denominator_;
  RatVector coeff(d);
  for (std::size_t i = 0; i < d; ++i) {
    Rational rest = target[i];
    for (std::size_t j = 0; j < i; ++j) rest -= Rational(hermite_(i, j)) * coeff[j];
    coeff[i] = rest / Rational(hermite_(i, i));
    if (coeff[i].get_den() != 1) return false;
  }
  return true;
}

LatticeBasis lattice_intersection(const LatticeBasis& a, const LatticeBasis& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::ShapeMismatch, "lattice dimensions differ");
  const std::size_t d = a.dim();
  const Integer common = lcm(a.denominator(), b.denominator());
  const Integer fa = common / a.denominator();
  const Integer fb = common / b.denominator();

  // Integer kernel of [A | -B]: pairs (x, y) with A x = B y.
  IntMatrix stacked(d, 2 * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      stacked(i, j) = fa * a.hermite()(i, j);
      stacked(i, d + j) = -fb * b.hermite()(i, j);
    }
  const ColumnHermiteForm form = column_hermite_form(stacked);
  IntMatrix generators(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t col = form.rank + k;
    for (std::size_t i = 0; i < d; ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < d; ++j) s += stacked(i, j) * form.V(j, col);
      generators(i, k) = s;
    }
  }
  RatMatrix basis = to_rational(generators);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) basis(i, j) /= common;
  return LatticeBasis(basis);
}

bool lattice_equal(const LatticeBasis& a, const LatticeBasis& b) { return a == b; }

}  // namespace superframe
