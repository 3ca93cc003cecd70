#include <doctest.h>

#include <cmath>
#include <numbers>

#include "siegel/divisors.hpp"
#include "siegel/errors.hpp"
#include "support.hpp"

using namespace siegel;
using namespace siegel::testing;

namespace {

const double kGamma = (std::sqrt(5.0) - 1.0) / 2.0;

Spectrum golden() { return Spectrum::rotation(kGamma); }

/// min over |k| = r + 1, j of |lambda^k / lambda_j - 1| by direct products.
double beta_brute(const std::vector<std::complex<double>>& lam, int r) {
  double best = 1e300;
  for (const auto& k : enumerate_multi_indices(lam.size(), r + 1))
    for (std::size_t j = 0; j < lam.size(); ++j) {
      std::complex<double> p = 1.0;
      for (std::size_t i = 0; i < lam.size(); ++i) p *= std::pow(lam[i], k[i]);
      best = std::min(best, std::abs(p / lam[j] - 1.0));
    }
  return best;
}

std::vector<double> sigma_of(const Spectrum& spec, int R) {
  return sigma_seq(alpha_seq(beta_seq(spec, R)));
}

}  // namespace

TEST_CASE("beta on the golden-mean rotation") {
  const auto beta = beta_seq(golden(), 60);
  REQUIRE(beta.size() == 61);
  CHECK(beta[0] == 1.0);
  CHECK(beta[1] == doctest::Approx(1.8640).epsilon(1e-4));
  for (int r = 1; r <= 60; ++r)
    CHECK(beta[static_cast<std::size_t>(r)] ==
          doctest::Approx(2.0 * std::abs(std::sin(std::numbers::pi * r * kGamma))).epsilon(1e-12));
}

TEST_CASE("beta in two variables against direct products") {
  const Spectrum spec = make_spectrum({0.05, -0.02}, {1.1, 2.9});
  std::vector<std::complex<double>> lam;
  for (std::size_t j = 0; j < 2; ++j) lam.push_back(std::polar(std::exp(spec.mu()[j]), spec.omega()[j]));
  const auto beta = beta_seq(spec, 12);
  for (int r = 1; r <= 12; ++r)
    CHECK(beta[static_cast<std::size_t>(r)] == doctest::Approx(beta_brute(lam, r)).epsilon(1e-10));
}

TEST_CASE("resonant spectra are rejected") {
  try {
    beta_seq(Spectrum::rotation(0.5), 5);
    FAIL("expected a violation");
  } catch (const NonResonanceViolated& e) {
    CHECK(e.order() == 2);
  }
  CHECK_THROWS_AS(beta_seq(golden(), 0), std::invalid_argument);
}

TEST_CASE("alpha and sigma") {
  const std::vector<double> ones(8, 1.0);
  const auto a = alpha_seq(ones);
  for (double x : a) CHECK(x == 1.0);
  const auto s = sigma_seq(a);
  CHECK(s[0] == 1.0);
  for (int r = 1; r < 8; ++r) CHECK(s[static_cast<std::size_t>(r)] == doctest::Approx(1.0 / (r * r)));

  Rng rng(51);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int t = 0; t < 10; ++t) {
    const Spectrum spec = make_spectrum({0.0, 0.0}, {6.283185307179586 * u(rng) + 0.1, 2.0 + u(rng)});
    const DivisorTable tab = DivisorTable::build(spec, 40);
    CHECK(tab.alpha[0] == 1.0);
    for (std::size_t r = 1; r < tab.alpha.size(); ++r) {
      CHECK(tab.alpha[r] <= tab.alpha[r - 1]);
      CHECK(tab.alpha[r] <= tab.beta[r]);
      CHECK(tab.sigma[r] == tab.alpha[r] / static_cast<double>(r * r));
    }
  }

  // The running minimum starts at beta_0 = 1.
  const auto g = alpha_seq(beta_seq(golden(), 3));
  CHECK(g[1] == 1.0);
  CHECK(g[2] == 1.0);
  CHECK(g[3] == doctest::Approx(2.0 * std::abs(std::sin(3.0 * std::numbers::pi * kGamma))));
}

TEST_CASE("Gamma and Bruno sums") {
  const std::vector<double> ones(1024, 1.0);
  CHECK(gamma_sum(ones, 1023).partial == 0.0);
  CHECK(bruno_sum(ones, 1023).partial == 0.0);
  CHECK(bruno_sum(ones, 1023).truncation == 10);

  const int R = 1'000'000;
  std::vector<double> alpha(R + 1);
  alpha[0] = 1.0;
  for (int r = 1; r <= R; ++r) alpha[static_cast<std::size_t>(r)] = 1.0 / (r + 1.0);
  long double oracle = 0.0L;
  for (int r = R; r >= 1; --r) oracle += std::log1p(static_cast<long double>(r)) / (static_cast<long double>(r) * (r + 1.0L));
  const SeriesEstimate G = gamma_sum(alpha, R);
  CHECK(G.partial == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-12));
  CHECK(G.partial == doctest::Approx(1.2577).epsilon(1e-4));
  CHECK_FALSE(G.tail_available);
}

TEST_CASE("tail bounds cover the neglected terms") {
  const int R = 1023, big = 1 << 20;
  std::vector<double> alpha(big + 1);
  alpha[0] = 1.0;
  for (int r = 1; r <= big; ++r) alpha[static_cast<std::size_t>(r)] = 0.5 / r;
  const DiophantineFloor floor{0.5, 1.0};
  const SeriesEstimate g = gamma_sum(alpha, R, floor);
  REQUIRE(g.tail_available);
  CHECK(g.upper() >= gamma_sum(alpha, big).partial);
  const SeriesEstimate b = bruno_sum(alpha, R, floor);
  REQUIRE(b.tail_available);
  CHECK(b.upper() >= bruno_sum(alpha, big).partial);
}

TEST_CASE("Gamma and Bruno compare on the golden mean") {
  const DivisorTable tab = DivisorTable::build(golden(), 1023, DiophantineFloor{1.0, 1.0});
  CHECK(tab.beta.size() == 1024);
  CHECK(tab.gamma.truncation == 1023);
  const double slack = -std::log(tab.alpha[1023]) / 1024.0;
  CHECK(tab.gamma.partial <= tab.bruno.partial);
  CHECK(tab.bruno.partial <= 2.0 * tab.gamma.partial + slack);
}

TEST_CASE("I* sets") {
  CHECK(istar(1).size() == 0);
  CHECK(istar(2) == IndexSet({1}));
  CHECK(istar(4) == IndexSet({1, 1, 2}));
  CHECK(istar(6) == IndexSet({1, 1, 1, 2, 3}));
  CHECK(istar(6).count(1) == 3);
  CHECK(istar(6).max() == 3);
  for (int s = 2; s <= 60; ++s) {
    CHECK(istar(s).size() == static_cast<std::size_t>(s - 1));
    CHECK(istar(s).max() == s / 2);
  }
  const IndexSet u = IndexSet({2}).united(istar(2)).united(istar(4));
  CHECK(u == IndexSet({1, 1, 1, 2, 2}));
  CHECK(triangle_order(u, istar(6)));
  for (const auto& rep : istar_properties_check(60)) {
    CHECK_MESSAGE(rep.passed(), rep.name);
    CHECK(rep.checks > 0);
  }
}

TEST_CASE("triangle order") {
  CHECK(triangle_order(IndexSet({1, 2}), IndexSet({2, 2})));
  CHECK_FALSE(triangle_order(IndexSet({3}), IndexSet({1, 2})));
  CHECK(triangle_order(IndexSet({3}), IndexSet({0, 3})));
  Rng rng(52);
  std::uniform_int_distribution<int> d(0, 9);
  for (int t = 0; t < 50; ++t) {
    std::vector<int> v(static_cast<std::size_t>(1 + t % 6));
    for (auto& x : v) x = d(rng);
    CHECK(triangle_order(IndexSet(v), IndexSet(v)));
  }
}

TEST_CASE("J sets") {
  const auto J12 = jset_enumerate(1, 2);
  REQUIRE(J12.size() == 2);
  CHECK(J12[0] == IndexSet({0}));
  CHECK(J12[1] == IndexSet({1}));
  for (int s = 2; s <= 9; ++s)
    for (int r = 1; r <= s; ++r) {
      const auto Jr = jset_enumerate(r, s);
      for (const auto& I : jset_enumerate(r - 1, s)) CHECK(jset_contains(r, s, I));
      for (const auto& I : Jr) {
        CHECK(jset_contains(r, s, I));
        CHECK(I.size() == static_cast<std::size_t>(s - 1));
      }
    }
  CHECK_THROWS_AS(jset_enumerate(12, 24, 100), EnumerationTooLarge);
}

TEST_CASE("T products") {
  const auto sigma = sigma_of(golden(), 40);
  for (int s = 1; s <= 8; ++s) CHECK(t_exact(0, s, sigma) == 1.0);
  CHECK(t_exact(1, 2, sigma) == doctest::Approx(1.0 / sigma[1]));

  const DivisorTable tab = DivisorTable::build(golden(), 1023, DiophantineFloor{1.0, 1.0});
  for (int s = 2; s <= 10; ++s)
    for (int r = 1; r <= s; ++r) {
      const double T = t_exact(r, s, tab.sigma);
      const TBound b = t_bound(r, s, tab);
      CHECK(T <= b.istar_product);
      // Same factors multiplied in a different order.
      CHECK(T / tab.sigma[static_cast<std::size_t>(s)] <= b.sharp_product * (1 + 4e-16 * s));
      CHECK(b.sharp_product <= b.closed_form);
      CHECK(b.closed_form_rigorous);
      CHECK(t_exact(r - 1, s, tab.sigma) <= T);
    }

  DivisorTable flat = tab;
  std::fill(flat.sigma.begin(), flat.sigma.end(), 1.0);
  CHECK(t_bound(3, 7, flat).sharp_product == 1.0);
}

TEST_CASE("accumulation constant") {
  long double s = 0.0L;
  const int K = 2'000'000;
  for (int k = K; k >= 2; --k) s += 2.0L * std::log(static_cast<long double>(k)) / (static_cast<long double>(k) * (k + 1.0L));
  const AccumulationConstant& a = accumulation_constant();
  CHECK(a.terms == 10'000'000);
  CHECK(a.partial >= static_cast<double>(s));
  CHECK(a.upper() >= a.partial);
  CHECK(a.partial == doctest::Approx(1.5770577).epsilon(1e-6));
  const double tail_K = 2.0 * (std::log(static_cast<double>(K)) + 1.0) / K;
  CHECK(a.partial <= static_cast<double>(s) + tail_K);
}

TEST_CASE("Theta sums") {
  CHECK(theta_exact(1, 1, 1, 2.0) == doctest::Approx(4.0));
  CHECK(theta_exact(1, 2, 1, 2.0) == doctest::Approx(2.5));
  CHECK(theta_bound(1, 2, 1, 2.0) == 4.0);
  for (int r = 1; r <= 4; ++r)
    for (int s = r; s <= 14; ++s)
      for (int k = 1; k * r <= s; ++k) {
        const std::uint64_t stars = [&] {
          const int n = s - k * r + k - 1;
          double b = 1;
          for (int i = 1; i <= k - 1; ++i) b = b * (n - k + 1 + i) / i;
          return static_cast<std::uint64_t>(std::llround(b));
        }();
        CHECK(composition_count(r, s, k) == stars);
        CHECK(composition_count_enumerated(r, s, k) == stars);
      }
  CHECK(real_binomial(5.0, 2) == 10.0);
  CHECK(real_binomial(0.5, 2) == doctest::Approx(-0.125));
  CHECK(real_binomial(3.0, 0) == 1.0);
}

TEST_CASE("combinatorial lemmas on the golden mean") {
  const auto sigma = sigma_of(golden(), 20);
  for (const auto& rep : verify_combinatorial_lemmas(10, sigma)) {
    CHECK_MESSAGE(rep.passed(), rep.name);
    CHECK(rep.checks > 0);
  }
}
