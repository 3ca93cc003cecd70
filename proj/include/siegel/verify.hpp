#ifndef SIEGEL_VERIFY_HPP
#define SIEGEL_VERIFY_HPP

// Numerical cross-checks of a normalization run: the conjugacy defect of the
// computed coordinates, an empirical convergence radius, and pointwise checks
// of the exchange property of Lie transforms.

#include <cstdint>
#include <span>
#include <vector>

#include "siegel/algebra.hpp"
#include "siegel/koenigs.hpp"
#include "siegel/lie.hpp"
#include "siegel/maps.hpp"
#include "siegel/normalizer.hpp"

namespace siegel {

inline constexpr int kDefaultSamples = 64;
inline constexpr std::uint64_t kDefaultSeed = 20240607;

/// `count` points with every coordinate uniform in the closed disk of radius rho.
std::vector<Point> sample_polydisk(std::size_t n, double rho, int count = kDefaultSamples,
                                   std::uint64_t seed = kDefaultSeed);

struct ResidualOptions {
  /// Use X_1..X_upto only; negative means all generators.
  int upto = -1;
  /// Radius of the sampling polydisk; zero skips the pointwise part.
  double rho = 0.0;
  int samples = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
};

struct ResidualReport {
  int order = 0;
  int upto = 0;
  /// graded[s] = ||order-s part of y(F(x)) - Lambda y(x)||, s = 0..order.
  std::vector<double> graded;
  double max_graded = 0.0;
  /// max(1, largest ||W^(r)_s|| in the run).
  double ledger_scale = 1.0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  /// |y(F(x)) - Lambda y(x)|_inf at each sample point.
  std::vector<double> pointwise;
  double max_pointwise = 0.0;
  /// max pointwise / max |Lambda y(x)|_inf over the samples.
  double max_relative = 0.0;
};

ResidualReport conjugacy_residual(const AnalyticMap& map, const NormalFormResult& result,
                                  const ResidualOptions& options = {});

struct RadiusEstimate {
  double radius = 0.0;
  double uncertainty = 0.0;
  double slope = 0.0;
  /// Orders entering the regression.
  std::vector<int> orders_used;
};

/// norms[s] = ||psi_s|| (index 0 ignored).  Regresses ln ||psi_s|| on s over
/// the top ceil(m/2) of the m nonzero orders; radius = exp(-slope) and the
/// uncertainty is radius times the slope standard error.
/// Throws InsufficientData with fewer than five nonzero orders.
RadiusEstimate root_test_radius(std::span<const double> norms);
/// Uses the orders >= 1 of y(x) - x.
RadiusEstimate root_test_radius(const CoordinateMap& transform);

/// max over samples of |f(T_X x) - (T_X f)(x)|, both sides truncated at order N.
double exchange_check(const GeneratingSequence& X, const HomPoly& f,
                      std::span<const Point> samples, int N);

}  // namespace siegel

#endif  // SIEGEL_VERIFY_HPP
