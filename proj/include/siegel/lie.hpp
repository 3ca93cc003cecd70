#ifndef SIEGEL_LIE_HPP
#define SIEGEL_LIE_HPP

// Lie derivatives, Lie series exp(L_X), and Lie transforms T_X = sum_s E_s
// driven by a generating sequence {X_1, X_2, ...}.  All operators are
// truncated at a fixed maximal order; anything above it is dropped.

#include <cstddef>
#include <span>
#include <vector>

#include "siegel/algebra.hpp"

namespace siegel {

/// L_X f = sum_j X_j df/dx_j.
HomPoly lie_derivative(const HomVectorField& X, const HomPoly& f);
/// (L_X v)_j = sum_l (X_l dv_j/dx_l - v_l dX_j/dx_l).
HomVectorField lie_derivative(const HomVectorField& X, const HomVectorField& v);

/// Sequence X_1..X_N of homogeneous fields, X_r of order r (zero allowed).
class GeneratingSequence {
 public:
  GeneratingSequence() = default;
  GeneratingSequence(std::size_t n, int truncation);

  std::size_t vars() const noexcept { return n_; }
  int truncation() const noexcept { return static_cast<int>(fields_.size()); }

  /// r in 1..truncation()
  const HomVectorField& operator[](int r) const { return fields_.at(static_cast<std::size_t>(r - 1)); }
  void set(int r, HomVectorField X);
  void add(int r, const HomVectorField& X);

  bool is_zero() const;
  /// Smallest r with X_r != 0, or truncation() + 1 if none.
  int first_nonzero() const;
  GeneratingSequence negated() const;
  std::vector<double> norms() const;

  friend bool operator==(const GeneratingSequence&, const GeneratingSequence&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<HomVectorField> fields_;
};

/// exp(L_X) applied to a graded series, truncated at max_order.  X must have order >= 1.
template <class Part>
GradedSeries<Part> lie_series_apply(const HomVectorField& X, const GradedSeries<Part>& target,
                                    int max_order);
CoordinateMap lie_series_apply(const HomVectorField& X, const CoordinateMap& target, int max_order);

/// E_0 .. E_{s_max} of the recursive definition applied to one homogeneous target.
template <class Part>
std::vector<Part> lie_transform_E_all(const GeneratingSequence& X, const Part& target, int s_max);

template <class Part>
Part lie_transform_E(const GeneratingSequence& X, int s, const Part& target);

/// Closed-form sum over compositions j_1+...+j_k = s (all j_i >= min_index).
/// Exponential cost; kept as a cross-check of lie_transform_E.
template <class Part>
Part lie_transform_E_nonrecursive(const GeneratingSequence& X, int s, const Part& target,
                                  int min_index = 1);

/// T_X applied to a graded series, truncated at max_order.
template <class Part>
GradedSeries<Part> apply_transform(const GeneratingSequence& X, const GradedSeries<Part>& target,
                                   int max_order);
/// T_X applied to each coordinate function of a map.
CoordinateMap apply_transform(const GeneratingSequence& X, const CoordinateMap& target,
                              int max_order);

/// Z with T_Z = T_X o T_Y up to the common truncation order.
GeneratingSequence compose_transforms(const GeneratingSequence& X, const GeneratingSequence& Y);

/// Value of exp(L_X) x at a point, summing the Lie series until the terms
/// drop below `tolerance` relative to the point size (at most max_terms terms).
Point lie_flow_point(const HomVectorField& X, std::span<const Complex> x,
                     double tolerance = 1e-17, int max_terms = 200);

/// Composition of Lie series S = exp(L_{X_r}) o ... o exp(L_{X_1}) and its
/// inverse exp(L_{-X_1}) o ... o exp(L_{-X_r}).
///
/// As operators on functions S f = f o s, where the point map s = s_1 o ... o s_r
/// composes the individual flows in the reverse order.
class LieSeriesChain {
 public:
  LieSeriesChain(std::size_t n, std::vector<HomVectorField> fields);

  std::size_t vars() const noexcept { return n_; }
  std::size_t length() const noexcept { return fields_.size(); }
  const std::vector<HomVectorField>& fields() const noexcept { return fields_; }

  CoordinateMap apply(const CoordinateMap& target, int max_order) const;
  CoordinateMap apply_inverse(const CoordinateMap& target, int max_order) const;
  template <class Part>
  GradedSeries<Part> apply(const GradedSeries<Part>& target, int max_order) const;
  template <class Part>
  GradedSeries<Part> apply_inverse(const GradedSeries<Part>& target, int max_order) const;

  /// Point map of the operator S.
  Point map_point(std::span<const Complex> x, double tolerance = 1e-17) const;
  /// Point map of the inverse operator.
  Point map_point_inverse(std::span<const Complex> x, double tolerance = 1e-17) const;

 private:
  std::size_t n_;
  std::vector<HomVectorField> fields_;
};

}  // namespace siegel

#endif  // SIEGEL_LIE_HPP
