#include "siegel/maps.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>

#include "siegel/errors.hpp"

namespace siegel {

namespace {

const Real kTwoPi = 2 * boost::math::constants::pi<Real>();

}  // namespace

Spectrum::Spectrum(std::vector<double> mu, std::vector<double> omega)
    : Spectrum(std::vector<Real>(mu.begin(), mu.end()),
               std::vector<Real>(omega.begin(), omega.end())) {}

Spectrum::Spectrum(std::vector<Real> mu, std::vector<Real> omega)
    : mu_q_(std::move(mu)), omega_q_(std::move(omega)) {
  if (mu_q_.size() != omega_q_.size())
    throw std::invalid_argument("Spectrum: mu/omega size mismatch");
  if (mu_q_.empty()) throw std::invalid_argument("Spectrum: empty");
  for (const auto& m : mu_q_) mu_.push_back(to_double(m));
  for (const auto& w : omega_q_) omega_.push_back(to_double(w));
}

Spectrum Spectrum::from_lambdas(const std::vector<Complex>& lambdas) {
  std::vector<Real> mu, omega;
  for (const auto& l : lambdas) {
    if (l == Complex{}) throw std::invalid_argument("Spectrum: zero eigenvalue");
    mu.push_back(log(abs(l)));
    omega.push_back(arg(l));
  }
  return Spectrum(std::move(mu), std::move(omega));
}

Spectrum Spectrum::rotation(double theta) {
  return Spectrum(std::vector<Real>{Real(0)}, std::vector<Real>{kTwoPi * theta});
}

Complex Spectrum::lambda(std::size_t j) const {
  return polar(exp(mu_q_[j]), omega_q_[j]);
}

std::vector<Complex> Spectrum::lambdas() const {
  std::vector<Complex> out;
  for (std::size_t j = 0; j < size(); ++j) out.push_back(lambda(j));
  return out;
}

bool Spectrum::poincare_domain() const {
  bool all_pos = true, all_neg = true;
  for (const double m : mu_) {
    all_pos = all_pos && m > 0.0;
    all_neg = all_neg && m < 0.0;
  }
  return all_pos || all_neg;
}

namespace {

// <k, mu + i omega> - (mu_j + i omega_j); j == size() means no shift.
std::pair<Real, Real> log_exponent(const Spectrum& spec, const MultiIndex& k, std::size_t j) {
  Real a = 0, b = 0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    a += k[i] * spec.mu_exact()[i];
    b += k[i] * spec.omega_exact()[i];
  }
  if (j < spec.size()) {
    a -= spec.mu_exact()[j];
    b -= spec.omega_exact()[j];
  }
  return {a, b};
}

}  // namespace

Complex Spectrum::power(const MultiIndex& k) const {
  const auto [a, b] = log_exponent(*this, k, size());
  return polar(exp(a), remainder(b, kTwoPi));
}

Complex Spectrum::ratio(const MultiIndex& k, std::size_t j) const {
  const auto [a, b] = log_exponent(*this, k, j);
  return polar(exp(a), remainder(b, kTwoPi));
}

Complex exp_minus_one(const Real& a, const Real& b_in) {
  const Real b = remainder(b_in, kTwoPi);
  const Real s = sin(b / 2);
  return Complex(expm1(a) * cos(b) - 2 * s * s, exp(a) * sin(b));
}

std::complex<double> exp_minus_one(double a, double b) {
  b = std::remainder(b, 2.0 * std::numbers::pi);
  const double s = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

Complex d_eigenvalue(const Spectrum& spec, const MultiIndex& k, std::size_t j) {
  const auto [a, b] = log_exponent(spec, k, j);
  return exp_minus_one(a, b);
}

HomPoly r_apply(const Spectrum& spec, const HomPoly& f) {
  HomPoly out(f.vars(), f.degree());
  for (const auto& [k, c] : f.terms()) out.set_term(k, c * spec.power(k));
  return out;
}

HomPoly r_inverse_apply(const Spectrum& spec, const HomPoly& f) {
  HomPoly out(f.vars(), f.degree());
  for (const auto& [k, c] : f.terms()) out.set_term(k, c / spec.power(k));
  return out;
}

HomVectorField r_apply(const Spectrum& spec, const HomVectorField& V) {
  HomVectorField out(V.vars(), V.order());
  for (std::size_t j = 0; j < V.vars(); ++j)
    for (const auto& [k, c] : V[j].terms()) out.add_term(j, k, c * spec.ratio(k, j));
  return out;
}

HomVectorField r_inverse_apply(const Spectrum& spec, const HomVectorField& V) {
  HomVectorField out(V.vars(), V.order());
  for (std::size_t j = 0; j < V.vars(); ++j)
    for (const auto& [k, c] : V[j].terms()) out.add_term(j, k, c / spec.ratio(k, j));
  return out;
}

HomVectorField d_apply(const Spectrum& spec, const HomVectorField& V) {
  HomVectorField out(V.vars(), V.order());
  for (std::size_t j = 0; j < V.vars(); ++j)
    for (const auto& [k, c] : V[j].terms()) out.add_term(j, k, c * d_eigenvalue(spec, k, j));
  return out;
}

HomVectorField solve_homological(const Spectrum& spec, const HomVectorField& rhs, double eps_res) {
  if (rhs.vars() != spec.size()) throw DegreeMismatch("solve_homological: dimension mismatch");
  HomVectorField X(rhs.vars(), rhs.order());
  for (std::size_t j = 0; j < rhs.vars(); ++j) {
    for (const auto& [k, c] : rhs[j].terms()) {
      const Complex d = d_eigenvalue(spec, k, j);
      if (magnitude(d) <= eps_res) throw ResonantDivisor(k.exponents(), j, to_std(d));
      X.add_term(j, k, c / d);
    }
  }
  return X;
}

// ------------------------------------------------------------- AnalyticMap

AnalyticMap::AnalyticMap(Spectrum spec, std::vector<HomVectorField> v)
    : spectrum(std::move(spec)), nonlinear(std::move(v)) {
  for (std::size_t i = 0; i < nonlinear.size(); ++i) {
    if (nonlinear[i].vars() != spectrum.size())
      throw DegreeMismatch("AnalyticMap: dimension mismatch");
    if (nonlinear[i].order() != static_cast<int>(i) + 1)
      throw DegreeMismatch("AnalyticMap: v_" + std::to_string(i + 1) + " has the wrong order");
  }
}

AnalyticMap AnalyticMap::linear(Spectrum spec, int truncation) {
  std::vector<HomVectorField> v;
  for (int s = 1; s <= truncation; ++s) v.emplace_back(spec.size(), s);
  return AnalyticMap(std::move(spec), std::move(v));
}

CoordinateMap AnalyticMap::as_coordinate_map(int max_order) const {
  CoordinateMap F(vars(), max_order);
  for (std::size_t j = 0; j < vars(); ++j) {
    F[j].add_scaled(HomPoly::coordinate(vars(), j), spectrum.lambda(j));
    for (int s = 1; s <= std::min(truncation(), max_order); ++s) F[j].add(v(s)[j]);
  }
  return F;
}

// ---------------------------------------------------------- representation

MapRepresentation map_to_generating_sequence(const AnalyticMap& map, double eps_res) {
  const std::size_t n = map.vars();
  const int N = map.truncation();
  const Spectrum& spec = map.spectrum;
  for (std::size_t j = 0; j < n; ++j)
    if (magnitude(spec.lambda(j)) <= eps_res)
      throw RepresentationObstruction(1, MultiIndex::unit(n, j).exponents(), j);

  GeneratingSequence W(n, N);
  for (int s = 1; s <= N; ++s) {
    // order-s part of E_s x_j with W_s still zero
    HomVectorField known(n, s);
    for (std::size_t j = 0; j < n; ++j) {
      const HomPoly e = lie_transform_E(W, s, HomPoly::coordinate(n, j));
      known.set_component(j, e);
    }
    HomVectorField Ws(n, s);
    for (std::size_t j = 0; j < n; ++j) {
      const Complex lj = spec.lambda(j);
      HomPoly target = map.v(s)[j];
      target *= Complex(1) / lj;
      target -= known[j];
      Ws.set_component(j, std::move(target));
    }
    W.set(s, std::move(Ws));
  }

  GeneratingSequence V(n, N);
  for (int s = 1; s <= N; ++s) V.set(s, r_inverse_apply(spec, W[s]));
  return {std::move(W), std::move(V)};
}

AnalyticMap generating_sequence_to_map(const GeneratingSequence& W, const Spectrum& spec) {
  const std::size_t n = spec.size();
  if (W.vars() != n) throw DegreeMismatch("generating_sequence_to_map: dimension mismatch");
  const int N = W.truncation();
  std::vector<HomVectorField> v;
  for (int s = 1; s <= N; ++s) v.emplace_back(n, s);
  for (std::size_t j = 0; j < n; ++j) {
    const auto E = lie_transform_E_all(W, HomPoly::coordinate(n, j), N);
    for (int s = 1; s <= N; ++s) {
      HomPoly p = E[static_cast<std::size_t>(s)];
      p *= spec.lambda(j);
      v[static_cast<std::size_t>(s - 1)].set_component(j, std::move(p));
    }
  }
  return AnalyticMap(spec, std::move(v));
}

}  // namespace siegel
