#ifndef SIEGEL_MAPS_HPP
#define SIEGEL_MAPS_HPP

// Diagonal linear part of a map, the operators R and D = R - 1, and the
// conversion between a map's Taylor expansion and its Lie-transform
// representation x' = T_W o R x.

#include <cstddef>
#include <vector>

#include "siegel/algebra.hpp"
#include "siegel/lie.hpp"

namespace siegel {

/// Divisors with modulus at or below this are treated as exact resonances.
inline constexpr double kDefaultResonanceThreshold = 1e-14;

/// Eigenvalues lambda_j = exp(mu_j + i omega_j).
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(std::vector<double> mu, std::vector<double> omega);
  Spectrum(std::vector<Real> mu, std::vector<Real> omega);
  static Spectrum from_lambdas(const std::vector<Complex>& lambdas);
  /// n = 1 rotation lambda = exp(2 pi i theta).
  static Spectrum rotation(double theta);

  std::size_t size() const noexcept { return mu_.size(); }
  /// Rounded to double, for divisor scans.
  const std::vector<double>& mu() const noexcept { return mu_; }
  const std::vector<double>& omega() const noexcept { return omega_; }
  const std::vector<Real>& mu_exact() const noexcept { return mu_q_; }
  const std::vector<Real>& omega_exact() const noexcept { return omega_q_; }
  Complex lambda(std::size_t j) const;
  std::vector<Complex> lambdas() const;

  /// All mu_j nonzero with one common sign.
  bool poincare_domain() const;
  bool siegel_domain() const { return !poincare_domain(); }

  /// lambda^k = exp(<k, mu + i omega>), evaluated in the log domain.
  Complex power(const MultiIndex& k) const;
  /// lambda^k / lambda_j.
  Complex ratio(const MultiIndex& k, std::size_t j) const;

 private:
  std::vector<double> mu_;
  std::vector<double> omega_;
  std::vector<Real> mu_q_;
  std::vector<Real> omega_q_;
};

/// exp(a + ib) - 1 without cancellation near zero; b is reduced mod 2 pi first.
Complex exp_minus_one(const Real& a, const Real& b);
std::complex<double> exp_minus_one(double a, double b);

/// lambda^k / lambda_j - 1, the eigenvalue of D on x^k e_j.
Complex d_eigenvalue(const Spectrum& spec, const MultiIndex& k, std::size_t j);

/// (R f)(x) = f(Lambda x).
HomPoly r_apply(const Spectrum& spec, const HomPoly& f);
/// (R V)(x) = Lambda^{-1} V(Lambda x).
HomVectorField r_apply(const Spectrum& spec, const HomVectorField& V);
HomPoly r_inverse_apply(const Spectrum& spec, const HomPoly& f);
HomVectorField r_inverse_apply(const Spectrum& spec, const HomVectorField& V);
/// D V = R V - V.
HomVectorField d_apply(const Spectrum& spec, const HomVectorField& V);

/// Solves D X = rhs monomial by monomial.  Throws ResonantDivisor when a
/// divisor needed by a nonzero coefficient has modulus <= eps_res.
HomVectorField solve_homological(const Spectrum& spec, const HomVectorField& rhs,
                                 double eps_res = kDefaultResonanceThreshold);

/// x' = Lambda x + v_1(x) + ... + v_N(x); nonlinear[s-1] is v_s (order s).
struct AnalyticMap {
  Spectrum spectrum;
  std::vector<HomVectorField> nonlinear;

  AnalyticMap() = default;
  AnalyticMap(Spectrum spec, std::vector<HomVectorField> v);
  /// Linear map with empty fields v_1..v_N.
  static AnalyticMap linear(Spectrum spec, int truncation);

  std::size_t vars() const noexcept { return spectrum.size(); }
  int truncation() const noexcept { return static_cast<int>(nonlinear.size()); }
  const HomVectorField& v(int s) const { return nonlinear.at(static_cast<std::size_t>(s - 1)); }

  /// Components F_j = lambda_j x_j + sum_s v_{s,j}, orders 0..max_order.
  CoordinateMap as_coordinate_map(int max_order) const;
  CoordinateMap as_coordinate_map() const { return as_coordinate_map(truncation()); }
};

/// Both generating sequences of a map: x' = T_W o R x = R o T_V x, W_s = R V_s.
struct MapRepresentation {
  GeneratingSequence W;
  GeneratingSequence V;
};

/// Extracts W order by order.  The order-s part of lambda_j T_W x_j is
/// lambda_j W_{s,j} plus terms built from W_1..W_{s-1}, so each order is a
/// diagonal solve with divisor lambda_j.
MapRepresentation map_to_generating_sequence(const AnalyticMap& map,
                                             double eps_res = kDefaultResonanceThreshold);

/// Collects the graded parts of T_W applied to the coordinates Lambda x.
AnalyticMap generating_sequence_to_map(const GeneratingSequence& W, const Spectrum& spec);

}  // namespace siegel

#endif  // SIEGEL_MAPS_HPP
