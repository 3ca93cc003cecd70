#ifndef SIEGEL_BOUNDS_HPP
#define SIEGEL_BOUNDS_HPP

// Constant chain of the iteration estimates, Cauchy-type estimates for Lie
// derivatives and Lie series, and the radius of the certified polydisk.

#include <span>
#include <vector>

#include "siegel/algebra.hpp"
#include "siegel/divisors.hpp"

namespace siegel {

struct CSequence {
  /// C_0 .. C_{r_max}
  std::vector<double> values;
  /// Upper bound on lim C_r from ln C_inf <= ln C_R + 1/(2R^2) + 1/R.
  double limit_upper = 0.0;

  int r_max() const { return static_cast<int>(values.size()) - 1; }
  double operator[](int r) const { return values.at(static_cast<std::size_t>(r)); }
};

/// C_1 = 2 C_0 + 16 A, C_r = (1 + 1/r^2)^{1/r} (1 + 1/r)^{1/r} C_{r-1}.
CSequence c_sequence(double C0, double A, int r_max);

/// Constants with ||W_s|| <= C_0^{s-1} A / s for every s.
struct HypothesisFit {
  double A = 0.0;
  double C0 = 0.0;
};

/// C_0 from a least-squares fit of ln(s ||W_s||) against s - 1, then the
/// smallest A admitting every order.  norms[s] = ||W_s||, norms[0] unused.
HypothesisFit fit_hypothesis(std::span<const double> norms);

struct RadiusBound {
  double rho_bar = 0.0;
  double log_rho_bar = 0.0;
  /// rho_bar = (3/2) B^{-1} e^{-Gamma}
  double B_explicit = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double K = 0.0;
  /// Root of -ln(1 - x) = 1 / (4 e K).
  double x_star = 0.0;
  double Gamma = 0.0;
};

/// Largest rho with rho K sum_r (eta e^Gamma rho)^r / r < rho / (4e).
RadiusBound radius_from_constants(double eta, double K, double Gamma);

struct BoundLedger {
  HypothesisFit fit;
  CSequence C;
  /// gamma = e^a with a the accumulation constant (upper estimate).
  double gamma_const = 1.0;
  /// Valid only when the Gamma tail of the divisor table is known.
  bool radius_available = false;
  RadiusBound radius;
};

/// rho_bar from the ledger constants and the Gamma upper estimate; throws
/// GammaDiverged when the table has no tail bound.  Infinite for A = 0.
RadiusBound radius_lower_bound(const DivisorTable& table, const BoundLedger& ledger);

/// Assembles C_r up to r_max, eta = gamma C_inf, K = A / C_inf, and rho_bar.
BoundLedger make_bound_ledger(const HypothesisFit& fit, const DivisorTable& table, int r_max);

struct IterationBound {
  double bound_X = 0.0;
  double bound_W = 0.0;
};

/// bound_X = T_{r-1,r} C_{r-1}^{r-1} A / (r alpha_r) (zero for r = 0),
/// bound_W = T_{r,s} C_r^{s-1} A / s, with T replaced by the I*_s product.
IterationBound iteration_bounds(const BoundLedger& ledger, const DivisorTable& table, int r,
                                int s);

/// (s!/e) (e |X|_rho / delta)^s |f|_rho; s = 0 gives |f|_rho.
double cauchy_lie_bound(double normX_rho, double f_rho, double rho, double delta, int s);
/// |X|_rho |f|_{rho - delta'} / (delta - delta').
double cauchy_lie_bound_first_order(double normX_rho, double f_rho_minus_dp, double delta,
                                    double delta_prime);

struct ExplieCertificate {
  bool passed = false;
  double field_sup = 0.0;
  /// delta (e - 1) / e^2
  double threshold = 0.0;
  /// delta / e^2
  double displacement_bound = 0.0;
  double rho = 0.0;
  double delta = 0.0;
  /// Delta_{rho-2delta} inside phi(Delta_{rho-delta}) inside Delta_rho.
  double inner_radius = 0.0;
  double middle_radius = 0.0;
};

/// Passes iff the sup bound of sum_i X_i on Delta_rho is below delta (e - 1) / e^2.
ExplieCertificate explie_domain_check(std::span<const HomVectorField> X, double rho,
                                      double delta);
ExplieCertificate explie_domain_check(const HomVectorField& X, double rho, double delta);

struct ComposedSeriesCertificate {
  bool passed = false;
  double sum = 0.0;
  /// rho / (4e)
  double threshold = 0.0;
  double rho = 0.0;
  double delta = 0.0;
  double inner_radius = 0.0;
  double middle_radius = 0.0;
  /// delta_r = |X_r|_rho delta / sum
  std::vector<double> delta_split;
};

/// norms[i] = |X_{i+1}|_rho; `tail` bounds the omitted remainder of the sum.
ComposedSeriesCertificate composed_series_certificate(std::span<const double> norms, double rho,
                                                      double delta, double tail = 0.0);

/// Sup bounds ||X_r|| rho^{r+1} of a list of generators.
std::vector<double> generator_sup_bounds(std::span<const HomVectorField> X, double rho);

}  // namespace siegel

#endif  // SIEGEL_BOUNDS_HPP
