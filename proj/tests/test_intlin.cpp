#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "superframe/intlin.hpp"

using namespace superframe;

namespace {

IntMatrix M(const char* text) { return parse_int_matrix(text); }
RatMatrix R(const char* text) { return parse_rat_matrix(text); }

IntMatrix random_nonsingular(std::mt19937_64& rng, std::size_t d) {
  while (true) {
    IntMatrix a(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) a(i, j) = static_cast<long>(rng() % 13) - 6;
    if (determinant(a) != 0) return a;
  }
}

Integer gcd_of_entries(const IntMatrix& a) {
  Integer g = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) g = gcd(g, a(i, j));
  return g;
}

}  // namespace

TEST_CASE("determinant") {
  CHECK(determinant(M("2")) == 2);
  CHECK(determinant(IntMatrix::identity(2)) == 1);
  CHECK(determinant(M("1,1;1,-1")) == -2);
  CHECK(determinant(M("1,2,3;4,5,6;7,8,10")) == -3);
  CHECK(determinant(M("0,1;1,0")) == -1);
  CHECK(determinant(R("1/2,0;0,2/3")) == Rational(1, 3));
}

TEST_CASE("inverse_rational") {
  CHECK(inverse_rational(M("2")) == R("1/2"));
  CHECK(inverse_rational(M("3,0;0,3")) == R("1/3,0;0,1/3"));
  CHECK(inverse_rational(M("1,1;1,-1")) == R("1/2,1/2;1/2,-1/2"));
  CHECK_THROWS_AS(inverse_rational(M("1,2;2,4")), Error);
  try {
    inverse_rational(M("0"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularMatrix);
  }
}

TEST_CASE("inverse is exact on random matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 1 + trial % 4;
    const IntMatrix a = random_nonsingular(rng, d);
    CHECK(to_rational(a) * inverse_rational(a) == RatMatrix::identity(d));
  }
}

TEST_CASE("smith normal form examples") {
  CHECK(smith_normal_form(M("3")).S == M("3"));
  CHECK(smith_normal_form(M("2,0;0,2")).S == M("2,0;0,2"));
  CHECK(smith_normal_form(M("1,1;1,-1")).S == M("1,0;0,2"));
  CHECK(smith_normal_form(M("2,4;6,8")).S == M("2,0;0,4"));
  CHECK_THROWS_AS(smith_normal_form(M("1,1;1,1")), Error);
}

TEST_CASE("smith normal form properties") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + trial % 4;
    const IntMatrix a = random_nonsingular(rng, d);
    const SmithForm f = smith_normal_form(a);
    CHECK(f.U * a * f.V == f.S);
    CHECK(abs(determinant(f.U)) == 1);
    CHECK(abs(determinant(f.V)) == 1);
    Integer product = 1;
    for (std::size_t i = 0; i < d; ++i) {
      CHECK(f.S(i, i) > 0);
      for (std::size_t j = 0; j < d; ++j)
        if (i != j) CHECK(f.S(i, j) == 0);
      if (i + 1 < d) CHECK(f.S(i + 1, i + 1) % f.S(i, i) == 0);
      product *= f.S(i, i);
    }
    CHECK(product == abs(determinant(a)));
    CHECK(f.S(0, 0) == gcd_of_entries(a));
  }
}

TEST_CASE("column hermite form") {
  const ColumnHermiteForm h = column_hermite_form(M("4,6;2,3"));
  CHECK(M("4,6;2,3") * h.V == h.H);
  CHECK(h.rank == 1);
  CHECK(abs(determinant(h.V)) == 1);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const IntMatrix a = random_nonsingular(rng, d);
    const ColumnHermiteForm f = column_hermite_form(a);
    CHECK(a * f.V == f.H);
    CHECK(f.rank == d);
    for (std::size_t i = 0; i < d; ++i) {
      CHECK(f.H(i, i) > 0);
      for (std::size_t j = i + 1; j < d; ++j) CHECK(f.H(i, j) == 0);
      for (std::size_t j = 0; j < i; ++j) {
        CHECK(f.H(i, j) >= 0);
        CHECK(f.H(i, j) < f.H(i, i));
      }
    }
  }
}

TEST_CASE("lattice intersection examples") {
  const LatticeBasis half(R("1/2"));
  const LatticeBasis third(R("1/3"));
  CHECK(lattice_intersection(half, third) == LatticeBasis::integer_lattice(1));
  CHECK(lattice_intersection(half, half) == half);

  const LatticeBasis quincunx(R("1/2,1/2;1/2,-1/2"));
  const LatticeBasis thirds(R("1/3,0;0,1/3"));
  CHECK(lattice_intersection(quincunx, thirds) == LatticeBasis::integer_lattice(2));
}

TEST_CASE("lattice intersection matches a brute-force window") {
  // a/2 = b/3 for |a|, |b| <= 100
  std::set<Rational> common;
  for (long a = -100; a <= 100; ++a)
    for (long b = -100; b <= 100; ++b)
      if (oracle::q(a, 2) == oracle::q(b, 3)) common.insert(oracle::q(b, 3));
  for (const auto& x : common) CHECK(x.get_den() == 1);
  CHECK(common.size() == 67);  // the integers in [-33, 33]

  // The quincunx example on a bounded window.
  const auto a = oracle::lattice_window({{1, 1}, {1, -1}}, 2, 30, Rational(4));
  const auto b = oracle::lattice_window({{1, 0}, {0, 1}}, 3, 30, Rational(4));
  const LatticeBasis meet = lattice_intersection(LatticeBasis(R("1/2,1/2;1/2,-1/2")), LatticeBasis(R("1/3,0;0,1/3")));
  std::size_t shared = 0;
  for (const auto& x : a) {
    if (!b.count(x)) continue;
    ++shared;
    CHECK(meet.contains(x));
  }
  CHECK(shared == 81);  // Z^2 points with |x_i| <= 4
}

TEST_CASE("lattice equality") {
  CHECK(lattice_equal(LatticeBasis(R("1")), LatticeBasis(R("-1"))));
  CHECK_FALSE(lattice_equal(LatticeBasis(R("1/2")), LatticeBasis(R("1"))));
  CHECK(lattice_equal(LatticeBasis(R("1,0;0,1")), LatticeBasis(R("1,0;1,1"))));
  CHECK_FALSE(lattice_equal(LatticeBasis(R("2,0;0,1")), LatticeBasis(R("1,0;0,1"))));
}

TEST_CASE("lattice intersection properties") {
  std::mt19937_64 rng(23);
  std::vector<LatticeBasis> family;
  for (int i = 0; i < 6; ++i) {
    const IntMatrix a = random_nonsingular(rng, 2);
    family.emplace_back(inverse_rational(a));
  }
  for (const auto& x : family) {
    CHECK(lattice_intersection(x, x) == x);
    for (const auto& y : family) {
      CHECK(lattice_intersection(x, y) == lattice_intersection(y, x));
      for (const auto& z : family)
        CHECK(lattice_intersection(lattice_intersection(x, y), z) == lattice_intersection(x, lattice_intersection(y, z)));
    }
  }
}

TEST_CASE("Z^d lies in the intersection of inverse lattices") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const IntMatrix m = random_nonsingular(rng, d);
    const IntMatrix p = random_nonsingular(rng, d);
    const LatticeBasis meet = lattice_intersection(LatticeBasis(inverse_rational(m)), LatticeBasis(inverse_rational(p)));
    for (std::size_t i = 0; i < d; ++i) {
      RatVector e(d, Rational(0));
      e[i] = 1;
      CHECK(meet.contains(e));
    }
  }
}

TEST_CASE("matrix text format round trips") {
  for (const char* text : {"2", "1,1;1,-1", "1/2,-3/4;0,7", "1,0,0;0,1,0;0,0,1"}) {
    CHECK(format_matrix(parse_rat_matrix(text)) == text);
  }
  CHECK(format_matrix(parse_int_matrix(" 1, 1 ; 1, -1 ")) == "1,1;1,-1");
  CHECK(format_matrix(parse_rat_matrix("2/4")) == "1/2");
  CHECK_THROWS_AS(parse_int_matrix("1/2"), Error);
  CHECK_THROWS_AS(parse_int_matrix("1,2;3"), Error);
  CHECK_THROWS_AS(parse_rat_matrix("a"), Error);
  CHECK_THROWS_AS(parse_rat_matrix("1/0"), Error);
}

TEST_CASE("dimension limit") {
  CHECK_NOTHROW(check_dimension(4));
  CHECK_THROWS_AS(check_dimension(5), Error);
  CHECK_NOTHROW(check_dimension(5, 6));
}
