#ifndef SIEGEL_NORMALIZER_HPP
#define SIEGEL_NORMALIZER_HPP

// Order-by-order removal of the nonlinear terms of a map.  Stage r solves
// D X_r = W_r, then rewrites the generating sequence so that slots 1..r vanish.

#include <span>
#include <vector>

#include "siegel/algebra.hpp"
#include "siegel/lie.hpp"
#include "siegel/maps.hpp"

namespace siegel {

/// Relative size of W^(r)_r tolerated before it is reset to zero.
inline constexpr double kAnnihilationTolerance = 1e-12;

struct StageResult {
  HomVectorField X;
  GeneratingSequence W;
  /// ||W^(r)_r|| as computed, before it is cleared.
  double annihilation = 0.0;
};

/// One stage: W_prev must vanish in slots 1..r-1.
StageResult normalize_step(const GeneratingSequence& W_prev, int r, const Spectrum& spec,
                           double eps_res = kDefaultResonanceThreshold);

struct NormalFormResult {
  Spectrum spectrum;
  int order = 0;
  /// W^(0), the generating sequence of the input map.
  GeneratingSequence initial;
  /// X_1..X_N at index r - 1.
  std::vector<HomVectorField> generators;
  /// y = x + psi(x), new coordinates as series in the old ones.
  CoordinateMap transform;
  /// x as series in y.
  CoordinateMap inverse_transform;
  /// norm_X[r] = ||X_r||, index 0 unused.
  std::vector<double> norm_X;
  /// norm_W[r][s] = ||W^(r)_s|| for 0 <= r <= N, 1 <= s <= N.
  std::vector<std::vector<double>> norm_W;
  /// annihilation[r] = ||W^(r)_r|| before it was cleared.
  std::vector<double> annihilation;

  const HomVectorField& X(int r) const { return generators.at(static_cast<std::size_t>(r - 1)); }
  /// Chain exp(L_{X_N}) o ... o exp(L_{X_1}); its inverse yields `transform`.
  LieSeriesChain chain(int upto_r) const;
  LieSeriesChain chain() const { return chain(order); }
};

/// Runs the representation and stages 1..N.  Resonances are rethrown with the stage attached.
NormalFormResult normalize(const AnalyticMap& map, int N,
                           double eps_res = kDefaultResonanceThreshold);

/// Series for y(x) built from X_1..X_r only, truncated at max_order.
CoordinateMap partial_transform(const NormalFormResult& result, int upto_r, int max_order);

enum class Direction { forward, inverse };

/// forward maps x to y, inverse maps y to x; evaluated from the truncated series.
Point transform_coordinates(const NormalFormResult& result, Direction dir,
                            std::span<const Complex> x);
/// Applies the operator of the chosen direction to each component of a series.
CoordinateMap transform_coordinates(const NormalFormResult& result, Direction dir,
                                    const CoordinateMap& series);

}  // namespace siegel

#endif  // SIEGEL_NORMALIZER_HPP
