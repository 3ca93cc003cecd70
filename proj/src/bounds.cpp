#include "siegel/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "siegel/errors.hpp"

namespace siegel {

namespace {
constexpr double kE = std::numbers::e;
}

CSequence c_sequence(double C0, double A, int r_max) {
  if (r_max < 1) throw std::invalid_argument("c_sequence: r_max must be >= 1");
  if (C0 < 0.0 || A < 0.0) throw std::invalid_argument("c_sequence: negative constant");
  CSequence out;
  out.values.push_back(C0);
  out.values.push_back(2.0 * C0 + 16.0 * A);
  double log_c = std::log(out.values.back());
  for (int r = 2; r <= r_max; ++r) {
    const double rd = r;
    log_c += (std::log1p(1.0 / (rd * rd)) + std::log1p(1.0 / rd)) / rd;
    out.values.push_back(std::exp(log_c));
  }
  const double R = r_max;
  out.limit_upper = std::exp(log_c + 0.5 / (R * R) + 1.0 / R);
  return out;
}

HypothesisFit fit_hypothesis(std::span<const double> norms) {
  HypothesisFit fit;
  std::vector<double> xs, ys;
  for (std::size_t s = 1; s < norms.size(); ++s) {
    if (norms[s] > 0.0) {
      xs.push_back(static_cast<double>(s) - 1.0);
      ys.push_back(std::log(static_cast<double>(s) * norms[s]));
    }
  }
  if (xs.empty()) return fit;
  if (xs.size() == 1) {
    if (xs[0] == 0.0) {
      fit.A = norms[1];
      return fit;
    }
    fit.C0 = std::exp(ys[0] / xs[0]);
  } else {
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    fit.C0 = std::exp(sxy / sxx);
  }
  for (std::size_t s = 1; s < norms.size(); ++s) {
    if (norms[s] <= 0.0) continue;
    const double need = static_cast<double>(s) * norms[s] / std::pow(fit.C0, static_cast<double>(s) - 1.0);
    fit.A = std::max(fit.A, need);
  }
  // Round A up until C_0^{s-1} A / s reproduces every norm in floating point.
  for (std::size_t s = 1; s < norms.size(); ++s) {
    const double sd = static_cast<double>(s);
    while (std::pow(fit.C0, sd - 1.0) * fit.A / sd < norms[s])
      fit.A = std::nextafter(fit.A, std::numeric_limits<double>::infinity());
  }
  return fit;
}

RadiusBound radius_from_constants(double eta, double K, double Gamma) {
  if (!(eta > 0.0) || !(K > 0.0)) throw std::invalid_argument("radius_from_constants: eta, K must be positive");
  RadiusBound out;
  out.eta = eta;
  out.K = K;
  out.Gamma = Gamma;
  out.x_star = -std::expm1(-1.0 / (4.0 * kE * K));
  out.log_rho_bar = std::log(out.x_star) - std::log(eta) - Gamma;
  out.rho_bar = out.x_star / (eta * std::exp(Gamma));
  out.B_explicit = 1.5 * eta / out.x_star;
  out.delta = out.rho_bar / 3.0;
  return out;
}

RadiusBound radius_lower_bound(const DivisorTable& table, const BoundLedger& ledger) {
  if (!table.gamma.tail_available)
    throw GammaDiverged("radius_lower_bound: no tail bound for Gamma at R_max=" +
                        std::to_string(table.R_max) + " (supply a Diophantine floor)");
  if (!(ledger.fit.A > 0.0)) {
    RadiusBound lin;
    lin.rho_bar = std::numeric_limits<double>::infinity();
    lin.log_rho_bar = lin.rho_bar;
    lin.delta = lin.rho_bar;
    lin.Gamma = table.gamma.upper();
    return lin;
  }
  const double C_inf = ledger.C.limit_upper;
  return radius_from_constants(ledger.gamma_const * C_inf, ledger.fit.A / C_inf,
                               table.gamma.upper());
}

BoundLedger make_bound_ledger(const HypothesisFit& fit, const DivisorTable& table, int r_max) {
  BoundLedger L;
  L.fit = fit;
  L.C = c_sequence(fit.C0, fit.A, std::max(r_max, 1));
  L.gamma_const = std::exp(accumulation_constant().upper());
  if (table.gamma.tail_available) {
    L.radius = radius_lower_bound(table, L);
    L.radius_available = true;
  }
  return L;
}

IterationBound iteration_bounds(const BoundLedger& ledger, const DivisorTable& table, int r,
                                int s) {
  if (r < 0 || s < 1) throw std::invalid_argument("iteration_bounds: need r >= 0, s >= 1");
  if (r > ledger.C.r_max() || s > table.R_max || r > table.R_max)
    throw std::out_of_range("iteration_bounds: tables too short");
  const double A = ledger.fit.A;
  IterationBound b;
  if (r >= 1) {
    const double T = r == 1 ? 1.0 : istar(r).divisor_product(table.sigma);
    b.bound_X = T * std::pow(ledger.C[r - 1], r - 1) * A /
                (r * table.alpha[static_cast<std::size_t>(r)]);
  }
  const double T = r == 0 ? 1.0 : istar(s).divisor_product(table.sigma);
  b.bound_W = T * std::pow(ledger.C[r], s - 1) * A / s;
  return b;
}

double cauchy_lie_bound(double normX_rho, double f_rho, double rho, double delta, int s) {
  if (!(delta > 0.0 && delta < rho)) throw std::invalid_argument("cauchy_lie_bound: need 0 < delta < rho");
  if (s < 0) throw std::invalid_argument("cauchy_lie_bound: negative power");
  if (s == 0) return f_rho;
  return std::exp(std::lgamma(s + 1.0) - 1.0) * std::pow(kE * normX_rho / delta, s) * f_rho;
}

double cauchy_lie_bound_first_order(double normX_rho, double f_rho_minus_dp, double delta,
                                    double delta_prime) {
  if (!(delta_prime >= 0.0 && delta_prime < delta))
    throw std::invalid_argument("cauchy_lie_bound_first_order: need 0 <= delta' < delta");
  return normX_rho * f_rho_minus_dp / (delta - delta_prime);
}

ExplieCertificate explie_domain_check(std::span<const HomVectorField> X, double rho,
                                      double delta) {
  if (!(delta > 0.0 && delta <= 0.5 * rho))
    throw std::invalid_argument("explie_domain_check: need 0 < delta <= rho/2");
  ExplieCertificate c;
  c.rho = rho;
  c.delta = delta;
  for (const auto& f : X) c.field_sup += sup_norm_bound(f, rho);
  c.threshold = delta * (kE - 1.0) / (kE * kE);
  c.displacement_bound = delta / (kE * kE);
  c.passed = c.field_sup < c.threshold;
  c.inner_radius = rho - 2.0 * delta;
  c.middle_radius = rho - delta;
  return c;
}

ExplieCertificate explie_domain_check(const HomVectorField& X, double rho, double delta) {
  return explie_domain_check(std::span<const HomVectorField>(&X, 1), rho, delta);
}

ComposedSeriesCertificate composed_series_certificate(std::span<const double> norms, double rho,
                                                      double delta, double tail) {
  if (!(delta > 0.0 && delta < 0.5 * rho))
    throw std::invalid_argument("composed_series_certificate: need 0 < delta < rho/2");
  ComposedSeriesCertificate c;
  c.rho = rho;
  c.delta = delta;
  for (double x : norms) c.sum += x;
  c.sum += tail;
  c.threshold = rho / (4.0 * kE);
  c.passed = c.sum < c.threshold;
  c.inner_radius = rho - 2.0 * delta;
  c.middle_radius = rho - delta;
  for (double x : norms) c.delta_split.push_back(c.sum > 0.0 ? x * delta / c.sum : 0.0);
  return c;
}

std::vector<double> generator_sup_bounds(std::span<const HomVectorField> X, double rho) {
  std::vector<double> out;
  for (const auto& f : X) out.push_back(sup_norm_bound(f, rho));
  return out;
}

}  // namespace siegel
