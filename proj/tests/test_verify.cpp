#include <doctest.h>

#include <cmath>

#include "siegel/errors.hpp"
#include "siegel/koenigs.hpp"
#include "siegel/verify.hpp"
#include "support.hpp"

using namespace siegel;
using namespace siegel::testing;

namespace {

AnalyticMap half_map() {
  HomVectorField v1(1, 1);
  v1.add_term(0, MultiIndex({2}), 1.0);
  return AnalyticMap(make_spectrum({std::log(0.5)}, {0.0}), {v1});
}

std::complex<double> poly_eval(const std::vector<std::complex<double>>& a, std::complex<double> x) {
  std::complex<double> s = 0.0;
  for (std::size_t d = a.size(); d-- > 0;) s = s * x + a[d];
  return s;
}

}  // namespace

TEST_CASE("polydisk samples") {
  const auto pts = sample_polydisk(3, 0.4, 100, 5);
  REQUIRE(pts.size() == 100);
  for (const auto& p : pts) {
    REQUIRE(p.size() == 3);
    for (const auto& c : p) CHECK(magnitude(c) <= 0.4);
  }
  const auto again = sample_polydisk(3, 0.4, 100, 5);
  const auto other = sample_polydisk(3, 0.4, 100, 6);
  CHECK(max_diff(pts[17], again[17]) == 0.0);
  CHECK(max_diff(pts[17], other[17]) > 0.0);
  CHECK_THROWS_AS(sample_polydisk(1, -1.0, 3), std::invalid_argument);
}

TEST_CASE("Koenigs oracle") {
  const std::vector<std::complex<double>> f{1.0};
  const auto a = koenigs_oracle(0.5, f, 10);
  REQUIRE(a.size() == 12);
  CHECK(a[0] == 0.0);
  CHECK(a[1] == 1.0);
  CHECK(std::abs(a[2] - 4.0) < 1e-14);

  // sigma(F(x)) - lambda sigma(x) = O(x^{N+2}) checked at a small point.
  const std::complex<double> lambda(0.3, 0.4);
  const std::vector<std::complex<double>> g{{0.5, -0.2}, {0.1, 0.3}};
  const std::complex<double> x(0.05, 0.02);
  const std::complex<double> Fx = lambda * x + g[0] * x * x + g[1] * x * x * x;
  const auto defect = [&](int N) {
    const auto b = koenigs_oracle(lambda, g, N);
    return std::abs(poly_eval(b, Fx) - lambda * poly_eval(b, x));
  };
  CHECK(defect(12) < 1e-16);
  CHECK(defect(4) > 1e3 * defect(12));

  CHECK_THROWS_AS(koenigs_oracle(-1.0, f, 4), ResonantDivisor);
}

TEST_CASE("conjugacy residual of a full run") {
  const AnalyticMap F = half_map();
  const NormalFormResult res = normalize(F, 12);
  ResidualOptions opt;
  opt.rho = 0.1;
  const ResidualReport rep = conjugacy_residual(F, res, opt);
  CHECK(rep.order == 12);
  CHECK(rep.upto == 12);
  CHECK(rep.graded.size() == 13);
  CHECK(rep.max_graded <= 1e-10 * rep.ledger_scale);
  CHECK(rep.ledger_scale >= 1.0);
  CHECK(rep.pointwise.size() == static_cast<std::size_t>(kDefaultSamples));
  CHECK(rep.seed == kDefaultSeed);
  // The truncated y o F differs from Lambda y beyond order 12 only, so the
  // relative defect scales like rho^13.
  ResidualOptions half = opt;
  half.rho = 0.05;
  const ResidualReport small = conjugacy_residual(F, res, half);
  CHECK(rep.max_relative < 1e-7);
  CHECK(small.max_relative * 4096.0 < rep.max_relative);
}

TEST_CASE("partial transforms conjugate up to their order") {
  Rng rng(71);
  const Spectrum spec = make_spectrum({0.0, 0.0}, {3.8832220774509327, 2.6025805691371464});
  const AnalyticMap F = random_map(rng, spec, 6, 0.3);
  const NormalFormResult res = normalize(F, 6);
  for (int upto = 0; upto <= 6; ++upto) {
    ResidualOptions opt;
    opt.upto = upto;
    const ResidualReport rep = conjugacy_residual(F, res, opt);
    for (int s = 0; s <= upto; ++s) CHECK(rep.graded[static_cast<std::size_t>(s)] <= 1e-20 * rep.ledger_scale);
    if (upto < 6) CHECK(rep.graded[static_cast<std::size_t>(upto + 1)] > 1e-6);
    CHECK(rep.pointwise.empty());
  }
}

TEST_CASE("root test radius") {
  std::vector<double> norms(21, 0.0);
  for (int s = 1; s <= 20; ++s) norms[static_cast<std::size_t>(s)] = 3.0 * std::pow(0.25, -s) ;
  const RadiusEstimate e = root_test_radius(norms);
  CHECK(e.radius == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(e.uncertainty < 1e-12);
  CHECK(e.orders_used.size() == 10);
  CHECK(e.orders_used.front() == 11);

  const std::vector<double> few{0.0, 1.0, 2.0, 0.0, 3.0, 4.0};
  CHECK_THROWS_AS(root_test_radius(few), InsufficientData);

  // 1/(1 - 2x) - 1 has radius 1/2.
  CoordinateMap y(1, 16);
  for (int s = 0; s <= 16; ++s) y[0].add(HomPoly::monomial(MultiIndex({s + 1}), std::pow(2.0, s)));
  CHECK(root_test_radius(y).radius == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("exchange property of Lie transforms") {
  Rng rng(72);
  for (int t = 0; t < 5; ++t) {
    const GeneratingSequence X = random_sequence(rng, 2, 8, 0.5);
    const HomPoly f = random_poly(rng, 2, 2);
    const auto pts = sample_polydisk(2, 0.01, 8, 100 + t);
    CHECK(exchange_check(X, f, pts, 8) < 1e-14);
  }
}
