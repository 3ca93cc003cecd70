#include <doctest.h>

#include <cmath>
#include <sstream>

#include "siegel/algebra.hpp"
#include "siegel/errors.hpp"
#include "siegel/textio.hpp"
#include "support.hpp"

using namespace siegel;
using namespace siegel::testing;

namespace {

HomPoly mono(std::vector<int> k, Complex c) { return HomPoly::monomial(MultiIndex(std::move(k)), c); }

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("multi-index degree and canonical order") {
  MultiIndex k({2, 0, 3});
  CHECK(k.degree() == 5);
  CHECK(k.lowered(2) == MultiIndex({2, 0, 2}));
  CHECK(k.raised(1).degree() == 6);

  const auto all = enumerate_multi_indices(2, 2);
  REQUIRE(all.size() == 3);
  CHECK(all[0] == MultiIndex({2, 0}));
  CHECK(all[1] == MultiIndex({1, 1}));
  CHECK(all[2] == MultiIndex({0, 2}));

  GradedLexLess less;
  for (std::size_t n = 1; n <= 4; ++n)
    for (int d = 0; d <= 5; ++d) {
      const auto v = enumerate_multi_indices(n, d);
      CHECK(v.size() == binom(n + d - 1, static_cast<std::size_t>(d)));
      CHECK(v.size() == monomial_count(n, d));
      for (std::size_t i = 1; i < v.size(); ++i) CHECK(less(v[i - 1], v[i]));
    }
}

TEST_CASE("poly_add") {
  const HomPoly x2 = mono({2, 0}, 1.0);
  CHECK(poly_add(x2, -x2).is_zero());
  CHECK(poly_add(x2, -x2).size() == 0);

  const HomPoly f = poly_add(mono({2, 0}, 2.0), mono({1, 1}, 3.0));
  CHECK(f.size() == 2);
  CHECK(f.coeff(MultiIndex({2, 0})) == Complex(2.0));
  CHECK(f.coeff(MultiIndex({1, 1})) == Complex(3.0));
  CHECK(poly_add(f, HomPoly(2, 2)) == f);
  CHECK_THROWS_AS(poly_add(x2, mono({1, 2}, 1.0)), DegreeMismatch);
}

TEST_CASE("poly_mul") {
  const HomPoly x = HomPoly::coordinate(2, 0);
  const HomPoly y = HomPoly::coordinate(2, 1);
  CHECK(poly_mul(x, x) == mono({2, 0}, 1.0));
  const HomPoly p = poly_mul(x + y, x - y);
  CHECK(p == poly_add(mono({2, 0}, 1.0), mono({0, 2}, -1.0)));

  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const HomPoly f = random_poly(rng, 3, 1 + t % 3);
    const HomPoly g = random_poly(rng, 3, 2 + t % 2);
    const HomPoly fg = poly_mul(f, g);
    CHECK(fg.degree() == f.degree() + g.degree());
    CHECK(poly_norm(fg) <= poly_norm(f) * poly_norm(g) * (1 + 1e-14));
  }
}

TEST_CASE("poly_norm is a norm") {
  const HomPoly f = poly_add(mono({2, 0}, 3.0), mono({1, 1}, Complex(0.0, 4.0)));
  CHECK(poly_norm(f) == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(poly_norm(HomPoly(2, 3)) == 0.0);

  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const HomPoly a = random_poly(rng, 2, 3, 1.0, 0.7);
    const HomPoly b = random_poly(rng, 2, 3, 1.0, 0.7);
    CHECK(poly_norm(a + b) <= poly_norm(a) + poly_norm(b) + 1e-14);
    const Complex c = random_complex(rng);
    CHECK(poly_norm(a * c) == doctest::Approx(magnitude(c) * poly_norm(a)).epsilon(1e-13));
  }
}

TEST_CASE("vf_norm") {
  HomVectorField X(2, 1);
  X.add_term(0, MultiIndex({2, 0}), 1.0);
  X.add_term(1, MultiIndex({0, 2}), 2.0);
  CHECK(vf_norm(X) == doctest::Approx(3.0));
  CHECK(vf_norm(HomVectorField(2, 4)) == 0.0);

  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    const HomVectorField V = random_field(rng, 2, 2);
    const Complex c = random_complex(rng);
    CHECK(vf_norm(V * c) == doctest::Approx(magnitude(c) * vf_norm(V)).epsilon(1e-13));
  }
}

TEST_CASE("sup_norm_bound") {
  CHECK(sup_norm_bound(mono({2}, 1.0), 2.0) == doctest::Approx(4.0));
  const HomPoly f = poly_add(mono({2, 0}, 1.0), mono({0, 2}, 1.0));
  CHECK(sup_norm_bound(f, 1.0) == doctest::Approx(2.0));
  CHECK(sup_norm_bound(f, 0.0) == 0.0);

  // Tightness: the bound is attained on the torus |x| = |y| = 1.
  double best = 0.0;
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      const Point p{from_std(std::polar(1.0, a * 0.39269908169872414)),
                    from_std(std::polar(1.0, b * 0.39269908169872414))};
      best = std::max(best, magnitude(f(p)));
    }
  CHECK(best == doctest::Approx(2.0).epsilon(1e-12));

  Rng rng(14);
  for (int t = 0; t < 100; ++t) {
    const HomPoly g = random_poly(rng, 3, 1 + t % 4);
    const double rho = 0.2 + 0.1 * (t % 7);
    const Point x = random_point(rng, 3, rho);
    CHECK(magnitude(g(x)) <= sup_norm_bound(g, rho) * (1 + 1e-13));
  }
}

TEST_CASE("derivative and evaluation") {
  // f = 3 x^2 y, df/dx = 6 x y, df/dy = 3 x^2
  const HomPoly f = mono({2, 1}, 3.0);
  CHECK(f.derivative(0) == mono({1, 1}, 6.0));
  CHECK(f.derivative(1) == mono({2, 0}, 3.0));
  const Point p{Complex(2.0, 0.0), Complex(0.0, 1.0)};
  CHECK(magnitude(f(p) - Complex(0.0, 12.0)) < 1e-15);
}

TEST_CASE("graded series drop orders above the truncation") {
  FunctionSeries s(2, 3);
  s.add(mono({3, 2}, 1.0));
  CHECK(s.is_zero());
  s.add(mono({1, 1}, 2.0));
  CHECK(s[1].size() == 1);
  CHECK(s.truncated(0).is_zero());
}

TEST_CASE("substitute agrees with pointwise composition") {
  Rng rng(15);
  const int N = 5;
  CoordinateMap G(2, N);
  for (std::size_t j = 0; j < 2; ++j) {
    G[j].add(HomPoly::coordinate(2, j));
    G[j].add(random_poly(rng, 2, 2, 0.5));
  }
  FunctionSeries f(2, N);
  f.add(random_poly(rng, 2, 1));
  f.add(random_poly(rng, 2, 2));
  const FunctionSeries fg = substitute(f, G, N);

  // f o G has degree at most 4, so the truncation is exact.
  for (int t = 0; t < 10; ++t) {
    const Point x = random_point(rng, 2, 1.0);
    CHECK(magnitude(evaluate(f, G(x)) - evaluate(fg, x)) < 1e-13);
  }
}

TEST_CASE("text form round-trips") {
  Rng rng(16);
  for (int t = 0; t < 20; ++t) {
    const HomPoly f = random_poly(rng, 3, 1 + t % 4, 1.0, 0.6);
    std::stringstream ss;
    write_poly(ss, f);
    const HomPoly g = read_poly(ss, 3, f.degree());
    CHECK(poly_norm(f - g) < 1e-15 * (1 + poly_norm(f)));
    std::stringstream again;
    write_poly(again, g);
    std::stringstream first;
    write_poly(first, f);
    CHECK(first.str() == again.str());
  }
  std::stringstream bad("1 0 2 2\n");
  CHECK_THROWS_AS(read_poly(bad, 2, 3), ParseError);
}
