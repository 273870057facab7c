#include <random>

#include "doctest.h"
#include "superframe/frames.hpp"
#include "superframe/serialize.hpp"
#include "superframe/suites.hpp"

using namespace superframe;

namespace {

constexpr double kTol = 1e-10;

Rational q(long a, long b = 1) { return make_rational(a, b); }
IntMatrix M(const char* text) { return parse_int_matrix(text); }

const CosetSystem& dyadic_triple() {
  static const CosetSystem cs = CosetSystem::build(M("2"), M("3"));
  return cs;
}

const CosetSystem& quincunx_nine() {
  static const CosetSystem cs = CosetSystem::build(M("1,1;1,-1"), M("3,0;0,3"));
  return cs;
}

RatVector random_point(std::mt19937_64& rng, std::size_t d) {
  RatVector x(d);
  for (auto& v : x) v = q(static_cast<long>(rng() % 131) - 50, 37);
  return x;
}

std::vector<IntVector> k_box(std::size_t d, long radius) {
  std::vector<IntVector> out;
  for (long a = -radius; a <= radius; ++a) {
    if (d == 1) {
      out.push_back({a});
      continue;
    }
    for (long b = -radius; b <= radius; ++b) out.push_back({a, b});
  }
  return out;
}

// Pointwise reference values built from the definitions only.
Complex phase(const IntVector& k, const RatVector& theta_star) {
  Rational t = 0;
  for (std::size_t a = 0; a < k.size(); ++a) t += Rational(k[a]) * theta_star[a];
  return std::polar(1.0, 2 * M_PI * to_double(frac(t)));
}

Complex translated_value(const SuperVector& g, const IntVector& k, Variant v, const CosetSystem& cs, std::size_t q,
                         const RatVector& x) {
  const RatVector shift = v == Variant::Base ? cs.P_inverse() * to_rational(k) : to_rational(k);
  return phase(k, cs.theta_star()[q]) * g[q](subtract(x, shift));
}

Complex dilated_value(const SuperVector& g, int j, Variant v, const CosetSystem& cs, std::size_t q, const RatVector& x) {
  const IntMatrix& m = v == Variant::Base ? cs.M() : cs.M_prime();
  // (D^j)_q g = D^j g_{(sigma*)^{-j}(q)}: iterate the j = +-1 rule.
  std::size_t source = q;
  const Permutation back = inverse(cs.sigma_star());
  for (int s = 0; s < std::abs(j); ++s) source = j > 0 ? back[source] : cs.sigma_star()[source];
  RatVector y = x;
  for (int s = 0; s < std::abs(j); ++s) y = j > 0 ? to_rational(m) * y : inverse_rational(m) * y;
  const double amp = std::pow(std::abs(to_double(Rational(determinant(m)))), j / 2.0);
  return amp * g[source](y);
}

}  // namespace

TEST_CASE("embeddings") {
  const CosetSystem& cs = dyadic_triple();
  const PiecewiseFunction f = indicator_interval(0, 1);
  const SuperVector sf = embed_S(f, cs);
  REQUIRE(sf.size() == 3);
  for (std::size_t q = 0; q < 3; ++q) {
    CHECK(to_json(sf[q]) == to_json(sf[0]));
    CHECK(functions_equal(sf[q], f.scaled(1 / std::sqrt(3.0))));
  }
  CHECK(std::abs(super_norm(embed_S(haar(), cs)) - 1.0) < kTol);

  const CosetSystem trivial = CosetSystem::build(M("2"), M("1"));
  CHECK(functions_equal(embed_S(haar(), trivial)[0], haar()));
  CHECK(functions_equal(embed_Sprime(haar(), trivial)[0], haar()));

  const SuperVector sp = embed_Sprime(f, cs);
  CHECK(functions_equal(sp[1], indicator_interval(0, 3).scaled(1.0 / 3.0)));
  for (std::size_t s = 0; s < 20; ++s) {
    const PiecewiseFunction r = sample_function(1, 5, s);
    CHECK(std::abs(super_norm(embed_Sprime(r, cs)) - r.norm()) < kTol);
    CHECK(std::abs(super_norm(embed_S(r, cs)) - r.norm()) < kTol);
    CHECK(super_max_abs_difference(super_UP(embed_Sprime(r, cs), cs), embed_S(r, cs)) < kTol);
  }
  const PiecewiseFunction r2 = sample_function(2, 5, 0);
  CHECK(super_max_abs_difference(super_UP(embed_Sprime(r2, quincunx_nine()), quincunx_nine()), embed_S(r2, quincunx_nine())) <
        kTol);
}

TEST_CASE("super translation") {
  const CosetSystem& cs = dyadic_triple();
  const SuperVector g = sample_super_vector(cs, 1, 0);
  CHECK(super_max_abs_difference(super_translate(g, {Integer(0)}, Variant::Base, cs), g) == 0.0);
  const SuperVector t = super_translate(g, {Integer(1)}, Variant::Primed, cs);
  for (std::size_t c = 0; c < 3; ++c) {
    const Complex w = std::polar(1.0, 2 * M_PI * c / 3.0);
    CHECK(max_abs_difference(t[c], translate(g[c], {q(1)}).scaled(w)) < 1e-15);
  }
  for (std::size_t s = 0; s < 10; ++s) {
    const SuperVector h = sample_super_vector(cs, 2, s);
    for (const auto& k : k_box(1, 3))
      for (const Variant v : {Variant::Base, Variant::Primed})
        CHECK(std::abs(super_norm(super_translate(h, k, v, cs)) - super_norm(h)) < kTol);
  }
}

TEST_CASE("super dilation") {
  const CosetSystem& cs = dyadic_triple();
  const SuperVector g = sample_super_vector(cs, 1, 1);
  CHECK(super_max_abs_difference(super_dilate(g, 0, Variant::Base, cs), g) == 0.0);
  const SuperVector d = super_dilate(g, 1, Variant::Base, cs);
  CHECK(functions_equal(d[0], dilate(g[0], M("2"), 1)));
  CHECK(functions_equal(d[1], dilate(g[2], M("2"), 1)));
  CHECK(functions_equal(d[2], dilate(g[1], M("2"), 1)));
  for (int j = -2; j <= 2; ++j)
    CHECK(std::abs(super_norm(super_dilate(g, j, Variant::Primed, cs)) - super_norm(g)) < kTol);
}

TEST_CASE("super operators agree with pointwise definitions") {
  std::mt19937_64 rng(77);
  for (const CosetSystem* cs : {&dyadic_triple(), &quincunx_nine()}) {
    const std::size_t d = cs->dim();
    for (std::size_t s = 0; s < 4; ++s) {
      const SuperVector g = sample_super_vector(*cs, 9, s);
      for (const Variant v : {Variant::Base, Variant::Primed}) {
        for (int j = -3; j <= 3; ++j) {
          const SuperVector out = super_dilate(g, j, v, *cs);
          for (int t = 0; t < 8; ++t) {
            const RatVector x = random_point(rng, d);
            for (std::size_t q = 0; q < cs->order(); ++q)
              CHECK(std::abs(out[q](x) - dilated_value(g, j, v, *cs, q, x)) < kTol);
          }
        }
        for (const auto& k : k_box(d, 2)) {
          const SuperVector out = super_translate(g, k, v, *cs);
          const RatVector x = random_point(rng, d);
          for (std::size_t q = 0; q < cs->order(); ++q)
            CHECK(std::abs(out[q](x) - translated_value(g, k, v, *cs, q, x)) < kTol);
        }
      }
    }
  }
}

TEST_CASE("commutation relations") {
  for (const CosetSystem* cs : {&dyadic_triple(), &quincunx_nine()}) {
    const std::size_t d = cs->dim();
    const std::size_t samples = d == 1 ? 6 : 1;
    const long radius = d == 1 ? 3 : 1;
    for (std::size_t s = 0; s < samples; ++s) {
      const SuperVector g = sample_super_vector(*cs, 4, s);
      for (const auto& k : k_box(d, radius)) {
        const IntVector mk = cs->M_prime() * k;
        for (const Variant v : {Variant::Base, Variant::Primed}) {
          const SuperVector left = super_dilate(super_translate(g, mk, v, *cs), 1, v, *cs);
          const SuperVector right = super_translate(super_dilate(g, 1, v, *cs), k, v, *cs);
          CHECK(super_max_abs_difference(left, right) < kTol);
        }
      }
    }
  }
}

TEST_CASE("conjugacy chain") {
  const CosetSystem& cs = dyadic_triple();
  for (std::size_t s = 0; s < 3; ++s) {
    const PiecewiseFunction f = sample_function(1, 8, s);
    for (int j = -2; j <= 2; ++j)
      for (const auto& k : k_box(1, 3)) {
        const SuperVector left =
            super_UP(super_dilate(super_translate(embed_Sprime(f, cs), k, Variant::Primed, cs), j, Variant::Primed, cs), cs);
        const SuperVector right = super_dilate(super_translate(embed_S(f, cs), k, Variant::Base, cs), j, Variant::Base, cs);
        CHECK(super_max_abs_difference(left, right) < kTol);
      }
  }
  const CosetSystem& q9 = quincunx_nine();
  const PiecewiseFunction f2 = sample_function(2, 8, 0);
  for (int j = -2; j <= 2; ++j) {
    const IntVector k{Integer(1), Integer(-2)};
    const SuperVector left =
        super_UP(super_dilate(super_translate(embed_Sprime(f2, q9), k, Variant::Primed, q9), j, Variant::Primed, q9), q9);
    const SuperVector right = super_dilate(super_translate(embed_S(f2, q9), k, Variant::Base, q9), j, Variant::Base, q9);
    CHECK(super_max_abs_difference(left, right) < kTol);
  }
}

TEST_CASE("U_P intertwinings on H") {
  for (const CosetSystem* cs : {&dyadic_triple(), &quincunx_nine()}) {
    for (std::size_t s = 0; s < 4; ++s) {
      const SuperVector g = sample_super_vector(*cs, 6, s);
      CHECK(super_max_abs_difference(super_UP(super_dilate(g, 1, Variant::Primed, *cs), *cs),
                                     super_dilate(super_UP(g, *cs), 1, Variant::Base, *cs)) < kTol);
      for (const auto& k : k_box(cs->dim(), cs->dim() == 1 ? 3 : 1))
        CHECK(super_max_abs_difference(super_UP(super_translate(g, k, Variant::Primed, *cs), *cs),
                                       super_translate(super_UP(g, *cs), k, Variant::Base, *cs)) < kTol);
    }
  }
  const CosetSystem trivial = CosetSystem::build(M("2"), M("1"));
  const SuperVector g = sample_super_vector(trivial, 1, 0);
  CHECK(super_max_abs_difference(super_UP(g, trivial), g) == 0.0);
}

TEST_CASE("decomposition") {
  const CosetSystem& cs = dyadic_triple();
  const PiecewiseFunction f = sample_function(1, 3, 2);
  const auto plain = decompose(embed_Sprime(f, cs), cs);
  CHECK(max_abs_difference(plain[0], f) < kTol);
  CHECK(plain[1].is_zero());
  CHECK(plain[2].is_zero());

  const auto two = decompose(super_translate(embed_Sprime(f, cs), cs.p_theta(2), Variant::Primed, cs), cs);
  CHECK(two[0].is_zero());
  CHECK(two[1].is_zero());
  CHECK(max_abs_difference(two[2], f) < kTol);

  for (std::size_t s = 0; s < 20; ++s) {
    const SuperVector g = sample_super_vector(cs, 12, s);
    CHECK(super_max_abs_difference(reassemble(decompose(g, cs), cs), g) < kTol);
  }
  const CosetSystem& q9 = quincunx_nine();
  const PiecewiseFunction f2 = sample_function(2, 12, 0);
  const SuperVector g2 = super_add(embed_Sprime(f2, q9), super_translate(embed_S(f2, q9), q9.p_theta(4), Variant::Base, q9));
  CHECK(super_max_abs_difference(reassemble(decompose(g2, q9), q9), g2) < kTol);
}

TEST_CASE("dilations permute the splitting subspaces") {
  for (const CosetSystem* cs : {&dyadic_triple(), &quincunx_nine()}) {
    const PiecewiseFunction f = sample_function(static_cast<int>(cs->dim()), 13, 1);
    for (std::size_t r = 0; r < cs->order(); ++r) {
      const SuperVector base = super_translate(embed_Sprime(f, *cs), cs->p_theta(r), Variant::Primed, *cs);
      const int jr = cs->dim() == 1 ? 3 : 1;
      for (int J = -jr; J <= jr; ++J) {
        const auto parts = decompose(super_dilate(base, J, Variant::Primed, *cs), *cs);
        const std::size_t target = power(cs->sigma(), -J)[r];
        for (std::size_t q = 0; q < cs->order(); ++q) {
          if (q == target)
            CHECK(std::abs(parts[q].norm() - f.norm()) < kTol);
          else
            CHECK(parts[q].is_zero());
        }
      }
    }
  }
}

TEST_CASE("super inner products") {
  const CosetSystem& cs = dyadic_triple();
  const PiecewiseFunction f = sample_function(1, 21, 0);
  const PiecewiseFunction g = sample_function(1, 21, 1);
  CHECK(std::abs(super_inner_product(embed_S(f, cs), embed_S(f, cs)) - f.norm_squared()) < kTol);
  CHECK(super_inner_product(embed_S(f, cs), SuperVector::zero(3, 1)) == Complex(0.0));
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t s = 0; s < 3; ++s) {
      if (r == s) continue;
      const SuperVector a = super_translate(embed_Sprime(f, cs), cs.p_theta(r), Variant::Primed, cs);
      const SuperVector b = super_translate(embed_Sprime(g, cs), cs.p_theta(s), Variant::Primed, cs);
      CHECK(std::abs(super_inner_product(a, b)) < kTol);
    }
  CHECK_THROWS_AS(super_inner_product(embed_S(f, cs), embed_S(f, CosetSystem::build(M("2"), M("5")))), Error);
}

TEST_CASE("inner products transfer from the super space") {
  const CosetSystem& cs = dyadic_triple();
  const Lemma3Report haar_report = verify_lemma3(cs, haar(), indicator_interval(0, 1), -4, 4, 12);
  CHECK(haar_report.cells == 9 * 25 * 3);
  CHECK(haar_report.max_residual <= kTol);
  CHECK(haar_report.max_zero_branch <= kTol);

  const Lemma3Report origin = verify_lemma3(cs, haar(), haar(), 0, 0, 0);
  CHECK(origin.cells == 3);
  CHECK(origin.delta_cells == 1);
  CHECK(origin.max_residual <= kTol);
  CHECK(std::abs(super_inner_product(embed_Sprime(haar(), cs), embed_Sprime(haar(), cs)) - 1.0) < kTol);

  for (std::size_t s = 0; s < 10; ++s) {
    const Lemma3Report r =
        verify_lemma3(cs, sample_function(1, 31, 2 * s), sample_function(1, 31, 2 * s + 1), -2, 2, 4);
    CHECK(r.max_residual <= kTol);
    CHECK(r.max_zero_branch <= kTol);
    CHECK(r.delta_cells * 3 == r.cells);
  }
  const Lemma3Report q = verify_lemma3(quincunx_nine(), sample_function(2, 3, 0), sample_function(2, 3, 1), -1, 1, 1);
  CHECK(q.max_residual <= kTol);
  CHECK(q.max_zero_branch <= kTol);
}

TEST_CASE("orthogonal splitting of the primed super system") {
  const CosetSystem& cs = dyadic_triple();
  const WaveletFamily psi({haar()});
  const TruncationSpec trunc{-2, 2, 3L};
  std::vector<std::vector<SystemElement>> parts(3);
  for (std::size_t r = 0; r < 3; ++r)
    for (const auto& idx : box_indices(SystemKind::super_primed(r), trunc, cs, psi).indices)
      parts[r].push_back(system_element(SystemKind::super_primed(r), idx.j, idx.k, idx.i, cs, psi));
  double worst = 0.0;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t s = r + 1; s < 3; ++s)
      for (const auto& a : parts[r])
        for (const auto& b : parts[s]) worst = std::max(worst, std::abs(element_inner_product(a, b)));
  CHECK(worst <= kTol);
}

TEST_CASE("closed-form powers match iterated single steps") {
  for (const CosetSystem* cs : {&dyadic_triple(), &quincunx_nine()}) {
    const SuperVector g = sample_super_vector(*cs, 17, 0);
    CHECK(power_consistency_residual(g, -4, 4, Variant::Base, *cs) <= kTol);
    CHECK(power_consistency_residual(g, -4, 4, Variant::Primed, *cs) <= kTol);
  }
}

TEST_CASE("super vector JSON") {
  const CosetSystem& cs = dyadic_triple();
  const SuperVector g = sample_super_vector(cs, 2, 3);
  const Json j = to_json(g, cs);
  CHECK(j["fingerprint"] == cs.fingerprint());
  const SuperVector back = super_vector_from_json(Json::parse(j.dump()), cs);
  CHECK(super_max_abs_difference(back, g) == 0.0);
  CHECK_THROWS_AS(super_vector_from_json(j, CosetSystem::build(M("2"), M("5"))), Error);
}
