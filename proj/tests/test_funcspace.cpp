#include <random>

#include "doctest.h"
#include "superframe/literals.hpp"
#include "superframe/serialize.hpp"
#include "superframe/suites.hpp"

using namespace superframe;

namespace {

constexpr double kTol = 1e-12;

Rational q(long a, long b = 1) { return make_rational(a, b); }
IntMatrix M(const char* text) { return parse_int_matrix(text); }

PiecewiseFunction unit_square() {
  return indicator_polygon({{q(0), q(0)}, {q(1), q(0)}, {q(1), q(1)}, {q(0), q(1)}});
}

std::vector<PiecewiseFunction> corpus(int dim, std::size_t n) {
  std::vector<PiecewiseFunction> out;
  for (std::size_t s = 0; s < n; ++s) out.push_back(sample_function(dim, 1234, s));
  return out;
}

RatVector random_point(std::mt19937_64& rng, std::size_t d) {
  RatVector x(d);
  for (auto& v : x) v = q(static_cast<long>(rng() % 97) - 40, 29);
  return x;
}

}  // namespace

TEST_CASE("dilation examples") {
  const PiecewiseFunction d1 = dilate(haar(), M("2"), 1);
  REQUIRE(d1.cells().size() == 2);
  const auto& a = std::get<Interval>(d1.cells()[0].region);
  const auto& b = std::get<Interval>(d1.cells()[1].region);
  CHECK(a.lo == 0);
  CHECK(a.hi == q(1, 4));
  CHECK(b.lo == q(1, 4));
  CHECK(b.hi == q(1, 2));
  CHECK(std::abs(d1.cells()[0].value - std::sqrt(2.0)) < kTol);
  CHECK(std::abs(d1.cells()[1].value + std::sqrt(2.0)) < kTol);

  CHECK(functions_equal(dilate(haar(), M("2"), 0), haar()));
  CHECK(functions_equal(dilate(indicator_interval(0, 1), M("2"), -1), indicator_interval(0, 2).scaled(1 / std::sqrt(2.0))));
}

TEST_CASE("translation examples") {
  CHECK(functions_equal(translate(indicator_interval(0, 1), {q(1, 3)}), indicator_interval(q(1, 3), q(4, 3))));
  CHECK(functions_equal(translate(haar(), {q(0)}), haar()));
  const PiecewiseFunction back = translate(translate(haar(), {q(1, 3)}), {q(-1, 3)});
  CHECK(same_geometry(back, haar()));
  CHECK(max_abs_difference(back, haar()) == 0.0);
}

TEST_CASE("scale_P examples") {
  CHECK(functions_equal(scale_P(indicator_interval(0, 1), M("3")), indicator_interval(0, q(1, 3)).scaled(std::sqrt(3.0))));
  CHECK(functions_equal(scale_P(haar(), M("1")), haar()));
  for (const auto& f : corpus(1, 10)) CHECK(std::abs(scale_P(f, M("3")).norm() - f.norm()) < kTol);
}

TEST_CASE("inner product examples") {
  CHECK(inner_product(indicator_interval(0, 1), indicator_interval(0, 1)) == Complex(1.0));
  CHECK(std::abs(inner_product(haar(), indicator_interval(0, 1))) < kTol);
  CHECK(std::abs(inner_product(indicator_interval(0, 1), indicator_interval(q(1, 2), q(3, 2))) - 0.5) < kTol);
  const PiecewiseFunction tri = indicator_polygon({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}}, Complex(0, 2));
  CHECK(std::abs(inner_product(tri, unit_square()) - Complex(0, 1)) < kTol);
  CHECK(std::abs(tri.norm_squared() - 2.0) < kTol);
  CHECK_THROWS_AS(inner_product(haar(), unit_square()), Error);
}

TEST_CASE("builders") {
  CHECK(std::abs(haar().norm() - 1.0) < kTol);
  CHECK(functions_equal(haar(), subtract(indicator_interval(0, q(1, 2)), indicator_interval(q(1, 2), 1))));
  CHECK(functions_equal(indicator_interval(0, 1), steps({q(0), q(1)}, {1.0})));
  const Box box{{q(0)}, {q(1)}};
  const PiecewiseFunction r1 = random_step(7, 5, box);
  const PiecewiseFunction r2 = random_step(7, 5, box);
  CHECK(to_json(r1) == to_json(r2));
  CHECK(r1.cells().size() == 5);
  CHECK(to_json(random_step(8, 5, box)) != to_json(r1));
  CHECK_THROWS_AS(indicator_interval(1, 0), Error);
  CHECK_THROWS_AS(indicator_polygon({{q(0), q(0)}, {q(0), q(1)}, {q(1), q(0)}}), Error);
  CHECK_THROWS_AS(random_step(1, kMaxRandomCells + 1, box), Error);
  for (int k = 1; k <= 3; ++k) {
    CHECK(std::abs(haar2d(k).norm() - 1.0) < kTol);
    CHECK(std::abs(inner_product(haar2d(k), unit_square())) < kTol);
    for (int l = k + 1; l <= 3; ++l) CHECK(std::abs(inner_product(haar2d(k), haar2d(l))) < kTol);
  }
  CHECK_THROWS_AS(PiecewiseFunction(3), Error);
}

TEST_CASE("operators agree with pointwise definitions") {
  std::mt19937_64 rng(3);
  for (const char* m_text : {"2", "3"}) {
    const IntMatrix m = M(m_text);
    for (const auto& f : corpus(1, 10))
      for (int j = -2; j <= 2; ++j) {
        const PiecewiseFunction g = dilate(f, m, j);
        const double amp = std::pow(std::abs(to_double(Rational(m(0, 0)))), j / 2.0);
        for (int s = 0; s < 20; ++s) {
          const RatVector x = random_point(rng, 1);
          const RatVector mx{x[0] * (j >= 0 ? Rational(power(m, j)(0, 0)) : 1 / Rational(power(m, -j)(0, 0)))};
          CHECK(std::abs(g(x) - amp * f(mx)) < kTol);
        }
      }
  }
  const IntMatrix quincunx = M("1,1;1,-1");
  for (const auto& f : corpus(2, 6)) {
    const PiecewiseFunction g = dilate(f, quincunx, 1);
    for (int s = 0; s < 30; ++s) {
      const RatVector x = random_point(rng, 2);
      CHECK(std::abs(g(x) - std::sqrt(2.0) * f(to_rational(quincunx) * x)) < kTol);
    }
    const RatVector u{q(1, 3), q(-2, 5)};
    const PiecewiseFunction t = translate(f, u);
    for (int s = 0; s < 30; ++s) {
      const RatVector x = random_point(rng, 2);
      CHECK(t(x) == f(subtract(x, u)));
    }
  }
}

TEST_CASE("unitarity on random step functions") {
  for (int dim : {1, 2}) {
    const IntMatrix m = dim == 1 ? M("2") : M("1,1;1,-1");
    const IntMatrix p = dim == 1 ? M("3") : M("3,0;0,3");
    for (const auto& f : corpus(dim, 50)) {
      const double n = f.norm();
      for (int j = -2; j <= 2; ++j) CHECK(std::abs(dilate(f, m, j).norm() - n) < kTol);
      CHECK(std::abs(translate(f, RatVector(dim, q(2, 7))).norm() - n) < kTol);
      CHECK(std::abs(scale_P(f, p).norm() - n) < kTol);
    }
  }
}

TEST_CASE("scalar commutation and intertwining") {
  for (int dim : {1, 2}) {
    const IntMatrix m = dim == 1 ? M("2") : M("1,1;1,-1");
    const IntMatrix p = dim == 1 ? M("3") : M("3,0;0,3");
    const IntMatrix m_prime = to_integer(to_rational(p) * to_rational(m) * inverse_rational(p));
    for (const auto& f : corpus(dim, 12)) {
      const RatVector u(dim, q(1, 3));
      CHECK(max_abs_difference(dilate(translate(f, to_rational(m) * u), m, 1), translate(dilate(f, m, 1), u)) < kTol);
      CHECK(max_abs_difference(scale_P(dilate(f, m_prime, 1), p), dilate(scale_P(f, p), m, 1)) < kTol);
      const IntVector k(dim, Integer(2));
      CHECK(max_abs_difference(scale_P(translate(f, to_rational(k)), p),
                               translate(scale_P(f, p), inverse_rational(p) * to_rational(k))) < kTol);
    }
  }
}

TEST_CASE("inner product is sesquilinear and conjugate symmetric") {
  const auto fs = corpus(1, 9);
  const auto gs = corpus(2, 9);
  const Complex a(0.3, -1.2), b(-2.0, 0.5);
  for (const auto* set : {&fs, &gs}) {
    for (std::size_t i = 0; i + 2 < set->size(); ++i) {
      const auto& f = (*set)[i];
      const auto& g = (*set)[i + 1];
      const auto& h = (*set)[i + 2];
      CHECK(std::abs(inner_product(f, g) - std::conj(inner_product(g, f))) < kTol);
      const Complex left = inner_product(add(f.scaled(a), g.scaled(b)), h);
      CHECK(std::abs(left - (a * inner_product(f, h) + b * inner_product(g, h))) < 1e-11);
      const Complex right = inner_product(h, add(f.scaled(a), g.scaled(b)));
      CHECK(std::abs(right - (std::conj(a) * inner_product(h, f) + std::conj(b) * inner_product(h, g))) < 1e-11);
      CHECK(std::abs(f.norm_squared() - inner_product(f, f).real()) < kTol);
    }
  }
}

TEST_CASE("geometry stays exact under compositions") {
  for (int dim : {1, 2}) {
    const IntMatrix m = dim == 1 ? M("3") : M("2,1;0,2");
    for (const auto& f : corpus(dim, 8)) {
      const RatVector u(dim, q(5, 11));
      const PiecewiseFunction round = translate(dilate(dilate(translate(f, u), m, 3), m, -3), RatVector(dim, q(-5, 11)));
      CHECK(same_geometry(round, f));
      CHECK(max_abs_difference(round, f) < kTol);
    }
  }
}

TEST_CASE("canonical form merges adjacent equal cells") {
  const PiecewiseFunction split = steps({q(0), q(1, 3), q(1)}, {2.0, 2.0});
  CHECK(canonical(split).cells().size() == 1);
  CHECK(functions_equal(split, indicator_interval(0, 1).scaled(2.0)));
  CHECK(canonical(add(haar(), haar().scaled(-1.0))).is_zero());
  const PiecewiseFunction left = indicator_polygon({{q(0), q(0)}, {q(1, 2), q(0)}, {q(1, 2), q(1)}, {q(0), q(1)}});
  const PiecewiseFunction right = indicator_polygon({{q(1, 2), q(0)}, {q(1), q(0)}, {q(1), q(1)}, {q(1, 2), q(1)}});
  CHECK(distance(add(left, right), unit_square()) < kTol);
}

TEST_CASE("linear combinations") {
  const auto fs = corpus(1, 4);
  const std::vector<Complex> c{1.0, Complex(0, 1), -0.5, 2.0};
  const PiecewiseFunction sum = linear_combination(c, fs);
  PiecewiseFunction manual(1);
  for (std::size_t i = 0; i < fs.size(); ++i) manual = add(manual, fs[i].scaled(c[i]));
  CHECK(max_abs_difference(sum, manual) < kTol);
  const auto gs = corpus(2, 3);
  const std::vector<Complex> d{1.0, -1.0, 0.5};
  const PiecewiseFunction sum2 = linear_combination(d, gs);
  std::mt19937_64 rng(9);
  for (int s = 0; s < 40; ++s) {
    const RatVector x = random_point(rng, 2);
    CHECK(std::abs(sum2(x) - (gs[0](x) - gs[1](x) + 0.5 * gs[2](x))) < kTol);
  }
}

TEST_CASE("function literals") {
  CHECK(functions_equal(parse_function("haar", 1), haar()));
  CHECK(functions_equal(parse_function("chi:1/2,3/2", 1), indicator_interval(q(1, 2), q(3, 2))));
  CHECK(functions_equal(parse_function("steps:0,1,1/2,-1,1", 1), haar()));
  CHECK(functions_equal(parse_function("poly:0,0;1,0;1,1;0,1=2", 2), unit_square().scaled(2.0)));
  CHECK(functions_equal(parse_function("poly:0,0;1,0;1,1;0,1", 2), unit_square()));
  CHECK(parse_function("zero", 2).is_zero());
  CHECK(to_json(parse_function("random:4,9", 1)) == to_json(random_step(9, 4, Box{{q(0)}, {q(1)}})));
  CHECK(functions_equal(parse_function("haar2d:3", 2), haar2d(3)));
  CHECK(parse_wavelets("haar2d", 2).size() == 3);
  CHECK(parse_complex("1.5-2i") == Complex(1.5, -2));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(parse_complex("2i") == Complex(0, 2));
  CHECK(parse_complex("1e-3+1e+2i") == Complex(1e-3, 1e2));
  CHECK(parse_complex("-4") == Complex(-4, 0));
  const std::vector<std::pair<const char*, int>> bad = {
      {"sinc", 1}, {"chi:1", 1}, {"steps:0,1", 1}, {"haar2d:4", 2}, {"chi:a,b", 1}, {"random:3", 1}, {"poly:0,0;1=1", 2}};
  for (const auto& [text, dim] : bad) CHECK_THROWS_AS(parse_function(text, dim), Error);
  CHECK_THROWS_AS(parse_function("haar", 2), Error);
  CHECK_THROWS_AS(parse_function("chi:1,0", 1), Error);
  CHECK_THROWS_AS(parse_complex("1+"), Error);
}

TEST_CASE("function JSON round trip") {
  std::vector<PiecewiseFunction> fs = corpus(1, 5);
  for (const auto& f : corpus(2, 5)) fs.push_back(f);
  fs.push_back(dilate(haar2d(2), M("1,1;1,-1"), 1));
  fs.push_back(PiecewiseFunction(1));
  for (const auto& f : fs) {
    const Json j = to_json(f);
    const PiecewiseFunction back = function_from_json(Json::parse(j.dump()));
    CHECK(to_json(back) == j);
    CHECK(same_geometry(back, f));
    CHECK(max_abs_difference(back, f) == 0.0);
  }
  CHECK_THROWS_AS(function_from_json(Json::parse(R"({"dim":1,"cells":[{"interval":["1","0"],"value":[1,0]}]})")), Error);
  CHECK_THROWS_AS(function_from_json(Json::parse(R"({"dim":1,"cells":[{"value":[1,0]}]})")), Error);
}
