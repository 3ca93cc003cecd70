#ifndef SIEGEL_TESTS_SUPPORT_HPP
#define SIEGEL_TESTS_SUPPORT_HPP

// Random instances shared by the unit tests and the acceptance driver.

#include <random>

#include "siegel/algebra.hpp"
#include "siegel/lie.hpp"
#include "siegel/maps.hpp"

namespace siegel::testing {

using Rng = std::mt19937_64;

inline Spectrum make_spectrum(std::vector<double> mu, std::vector<double> omega) {
  return Spectrum(std::move(mu), std::move(omega));
}

inline Complex random_complex(Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  return Complex(nd(rng), nd(rng));
}

/// Homogeneous polynomial of the given degree, each monomial kept with probability `density`.
inline HomPoly random_poly(Rng& rng, std::size_t n, int degree, double scale = 1.0,
                           double density = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  HomPoly f(n, degree);
  for (const auto& k : enumerate_multi_indices(n, degree))
    if (u(rng) < density) f.add_term(k, random_complex(rng, scale));
  return f;
}

inline HomVectorField random_field(Rng& rng, std::size_t n, int order, double scale = 1.0,
                                   double density = 1.0) {
  std::vector<HomPoly> comps;
  for (std::size_t j = 0; j < n; ++j) comps.push_back(random_poly(rng, n, order + 1, scale, density));
  return HomVectorField(std::move(comps));
}

inline GeneratingSequence random_sequence(Rng& rng, std::size_t n, int N, double scale = 1.0) {
  GeneratingSequence X(n, N);
  for (int r = 1; r <= N; ++r) X.set(r, random_field(rng, n, r, scale));
  return X;
}

inline Point random_point(Rng& rng, std::size_t n, double rho) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Point x(n);
  for (auto& c : x) c = from_std(std::polar(rho * std::sqrt(u(rng)), 6.283185307179586 * u(rng)));
  return x;
}

inline double max_diff(const Point& a, const Point& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, magnitude(a[j] - b[j]));
  return m;
}

/// Random map with the given spectrum and nonlinear orders 1..N.
inline AnalyticMap random_map(Rng& rng, const Spectrum& spec, int N, double scale = 1.0) {
  std::vector<HomVectorField> v;
  for (int s = 1; s <= N; ++s) v.push_back(random_field(rng, spec.size(), s, scale));
  return AnalyticMap(spec, std::move(v));
}

}  // namespace siegel::testing

#endif  // SIEGEL_TESTS_SUPPORT_HPP
