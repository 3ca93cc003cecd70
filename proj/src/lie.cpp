#include "siegel/lie.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "siegel/errors.hpp"

namespace siegel {

HomPoly lie_derivative(const HomVectorField& X, const HomPoly& f) {
  if (X.vars() != f.vars()) throw DegreeMismatch("lie_derivative: variable count mismatch");
  const std::size_t n = f.vars();
  if (f.degree() == 0) return HomPoly(n, X.order());
  HomPoly out(n, f.degree() + X.order());
  if (X.is_zero() || f.is_zero()) return out;
  for (std::size_t j = 0; j < n; ++j) {
    if (X[j].is_zero()) continue;
    for (const auto& [k, b] : f.terms()) {
      if (k[j] == 0) continue;
      const MultiIndex base = k.lowered(j);
      const Complex cb = static_cast<double>(k[j]) * b;
      for (const auto& [kx, c] : X[j].terms()) out.add_term(base + kx, cb * c);
    }
  }
  return out;
}

HomVectorField lie_derivative(const HomVectorField& X, const HomVectorField& v) {
  if (X.vars() != v.vars()) throw DegreeMismatch("lie_derivative: variable count mismatch");
  const std::size_t n = v.vars();
  HomVectorField out(n, X.order() + v.order());
  if (X.is_zero() || v.is_zero()) return out;
  for (std::size_t j = 0; j < n; ++j) {
    HomPoly comp = lie_derivative(X, v[j]);
    comp -= lie_derivative(v, X[j]);
    out.set_component(j, std::move(comp));
  }
  return out;
}

// ------------------------------------------------------- GeneratingSequence

GeneratingSequence::GeneratingSequence(std::size_t n, int truncation) : n_(n) {
  if (truncation < 0) throw std::invalid_argument("GeneratingSequence: negative truncation");
  fields_.reserve(static_cast<std::size_t>(truncation));
  for (int r = 1; r <= truncation; ++r) fields_.emplace_back(n, r);
}

void GeneratingSequence::set(int r, HomVectorField X) {
  if (r < 1 || r > truncation()) throw std::out_of_range("GeneratingSequence::set: bad slot");
  if (X.order() != r || X.vars() != n_)
    throw DegreeMismatch("GeneratingSequence::set: slot " + std::to_string(r) +
                         " needs a field of order " + std::to_string(r));
  fields_[static_cast<std::size_t>(r - 1)] = std::move(X);
}

void GeneratingSequence::add(int r, const HomVectorField& X) {
  if (r < 1 || r > truncation()) return;
  fields_[static_cast<std::size_t>(r - 1)] += X;
}

bool GeneratingSequence::is_zero() const {
  return std::all_of(fields_.begin(), fields_.end(),
                     [](const HomVectorField& X) { return X.is_zero(); });
}

int GeneratingSequence::first_nonzero() const {
  for (int r = 1; r <= truncation(); ++r)
    if (!(*this)[r].is_zero()) return r;
  return truncation() + 1;
}

GeneratingSequence GeneratingSequence::negated() const {
  GeneratingSequence out = *this;
  for (auto& X : out.fields_) X = -X;
  return out;
}

std::vector<double> GeneratingSequence::norms() const {
  std::vector<double> out(fields_.size() + 1, 0.0);
  for (int r = 1; r <= truncation(); ++r) out[static_cast<std::size_t>(r)] = vf_norm((*this)[r]);
  return out;
}

// --------------------------------------------------------------- Lie series

template <class Part>
GradedSeries<Part> lie_series_apply(const HomVectorField& X, const GradedSeries<Part>& target,
                                    int max_order) {
  if (X.order() < 1) throw std::invalid_argument("lie_series_apply: generator of order < 1");
  GradedSeries<Part> out(target.vars(), max_order);
  const int r = X.order();
  for (int o = 0; o <= std::min(target.max_order(), max_order); ++o) {
    Part term = target[o];
    if (term.is_zero()) continue;
    out.add(term);
    if (X.is_zero()) continue;
    for (int k = 1; o + k * r <= max_order; ++k) {
      term = lie_derivative(X, term);
      term *= Real(1) / k;
      if (term.is_zero()) break;
      out.add(term);
    }
  }
  return out;
}

CoordinateMap lie_series_apply(const HomVectorField& X, const CoordinateMap& target,
                               int max_order) {
  std::vector<FunctionSeries> out;
  for (const auto& c : target.components()) out.push_back(lie_series_apply(X, c, max_order));
  return CoordinateMap(std::move(out));
}

template GradedSeries<HomPoly> lie_series_apply(const HomVectorField&, const GradedSeries<HomPoly>&,
                                                int);
template GradedSeries<HomVectorField> lie_series_apply(const HomVectorField&,
                                                       const GradedSeries<HomVectorField>&, int);

// ------------------------------------------------------------ Lie transform

template <class Part>
std::vector<Part> lie_transform_E_all(const GeneratingSequence& X, const Part& target, int s_max) {
  if (s_max < 0) throw std::invalid_argument("lie_transform_E: negative order");
  std::vector<Part> E;
  E.reserve(static_cast<std::size_t>(s_max) + 1);
  E.push_back(target);
  const std::size_t n = target.vars();
  for (int s = 1; s <= s_max; ++s) {
    Part acc = zero_part<Part>(n, target.order() + s);
    for (int j = 1; j <= std::min(s, X.truncation()); ++j) {
      const HomVectorField& Xj = X[j];
      const Part& prev = E[static_cast<std::size_t>(s - j)];
      if (Xj.is_zero() || prev.is_zero()) continue;
      acc.add_scaled(lie_derivative(Xj, prev), Real(j) / s);
    }
    if (acc.order() != target.order() + s)
      throw std::logic_error("lie_transform_E: order bookkeeping violated");
    E.push_back(std::move(acc));
  }
  return E;
}

template <class Part>
Part lie_transform_E(const GeneratingSequence& X, int s, const Part& target) {
  return lie_transform_E_all(X, target, s).back();
}

namespace {

// Accumulates weights prod(j_i) / prod(partial sums) as a reduced fraction.
struct Fraction {
  unsigned long long num = 1;
  unsigned long long den = 1;

  void multiply(unsigned long long a, unsigned long long b) {
    const unsigned long long g1 = std::gcd(a, den);
    const unsigned long long g2 = std::gcd(b, num);
    num = (num / g2) * (a / g1);
    den = (den / g1) * (b / g2);
  }
  Real value() const { return Real(num) / Real(den); }
};

// Walks compositions j_1 + ... + j_k = s in application order: j_1 is the
// Lie derivative applied first.  `partial` is j_1 + ... + j_m so far.
template <class Part>
void accumulate_compositions(const GeneratingSequence& X, int s, int min_index, int partial,
                             const Part& current, Fraction weight, Part& acc) {
  if (partial == s) {
    acc.add_scaled(current, weight.value());
    return;
  }
  for (int j = min_index; partial + j <= s; ++j) {
    if (j > X.truncation()) break;
    const HomVectorField& Xj = X[j];
    if (Xj.is_zero()) continue;
    Part next = lie_derivative(Xj, current);
    if (next.is_zero()) continue;
    Fraction w = weight;
    w.multiply(static_cast<unsigned long long>(j), static_cast<unsigned long long>(partial + j));
    accumulate_compositions(X, s, min_index, partial + j, next, w, acc);
  }
}

}  // namespace

template <class Part>
Part lie_transform_E_nonrecursive(const GeneratingSequence& X, int s, const Part& target,
                                  int min_index) {
  if (s < 1) throw std::invalid_argument("lie_transform_E_nonrecursive: s must be >= 1");
  Part acc = zero_part<Part>(target.vars(), target.order() + s);
  accumulate_compositions(X, s, std::max(1, min_index), 0, target, Fraction{}, acc);
  return acc;
}

template <class Part>
GradedSeries<Part> apply_transform(const GeneratingSequence& X, const GradedSeries<Part>& target,
                                   int max_order) {
  GradedSeries<Part> out(target.vars(), max_order);
  for (int o = 0; o <= std::min(target.max_order(), max_order); ++o) {
    if (target[o].is_zero()) continue;
    for (const Part& p : lie_transform_E_all(X, target[o], max_order - o)) out.add(p);
  }
  return out;
}

CoordinateMap apply_transform(const GeneratingSequence& X, const CoordinateMap& target,
                              int max_order) {
  std::vector<FunctionSeries> out;
  for (const auto& c : target.components()) out.push_back(apply_transform(X, c, max_order));
  return CoordinateMap(std::move(out));
}

template std::vector<HomPoly> lie_transform_E_all(const GeneratingSequence&, const HomPoly&, int);
template std::vector<HomVectorField> lie_transform_E_all(const GeneratingSequence&,
                                                         const HomVectorField&, int);
template HomPoly lie_transform_E(const GeneratingSequence&, int, const HomPoly&);
template HomVectorField lie_transform_E(const GeneratingSequence&, int, const HomVectorField&);
template HomPoly lie_transform_E_nonrecursive(const GeneratingSequence&, int, const HomPoly&, int);
template HomVectorField lie_transform_E_nonrecursive(const GeneratingSequence&, int,
                                                     const HomVectorField&, int);
template GradedSeries<HomPoly> apply_transform(const GeneratingSequence&,
                                               const GradedSeries<HomPoly>&, int);
template GradedSeries<HomVectorField> apply_transform(const GeneratingSequence&,
                                                      const GradedSeries<HomVectorField>&, int);

GeneratingSequence compose_transforms(const GeneratingSequence& X, const GeneratingSequence& Y) {
  if (X.vars() != Y.vars() || X.truncation() != Y.truncation())
    throw DegreeMismatch("compose_transforms: sequences differ in size");
  const int N = X.truncation();
  GeneratingSequence Z(X.vars(), N);
  for (int s = 1; s <= N; ++s) {
    Z.add(s, X[s]);
    Z.add(s, Y[s]);
  }
  // Z_s += (j/s) E^X_{s-j} Y_j for j < s
  for (int j = 1; j < N; ++j) {
    if (Y[j].is_zero()) continue;
    const auto E = lie_transform_E_all(X, Y[j], N - j);
    for (int m = 1; m <= N - j; ++m) {
      const int s = j + m;
      HomVectorField term = E[static_cast<std::size_t>(m)];
      term *= Real(j) / s;
      Z.add(s, term);
    }
  }
  return Z;
}

// ---------------------------------------------------------- pointwise flows

namespace {

double max_abs(std::span<const Complex> v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, magnitude(c));
  return m;
}

}  // namespace

Point lie_flow_point(const HomVectorField& X, std::span<const Complex> x, double tolerance,
                     int max_terms) {
  const std::size_t n = x.size();
  if (X.vars() != n) throw DegreeMismatch("lie_flow_point: dimension mismatch");
  Point y(x.begin(), x.end());
  if (X.is_zero()) return y;
  const double scale = std::max(1.0, max_abs(x));
  // terms[j] = L_X^k x_j / k!
  std::vector<HomPoly> terms;
  for (std::size_t j = 0; j < n; ++j) terms.push_back(HomPoly::coordinate(n, j));
  int small_in_a_row = 0;
  for (int k = 1; k <= max_terms; ++k) {
    double largest = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      terms[j] = lie_derivative(X, terms[j]);
      terms[j] *= Real(1) / k;
      const Complex v = terms[j](x);
      y[j] += v;
      largest = std::max(largest, magnitude(v));
    }
    if (largest <= tolerance * scale) {
      if (++small_in_a_row == 2) break;
    } else {
      small_in_a_row = 0;
    }
  }
  return y;
}

LieSeriesChain::LieSeriesChain(std::size_t n, std::vector<HomVectorField> fields)
    : n_(n), fields_(std::move(fields)) {
  for (const auto& X : fields_) {
    if (X.vars() != n_) throw DegreeMismatch("LieSeriesChain: dimension mismatch");
    if (X.order() < 1) throw std::invalid_argument("LieSeriesChain: generator of order < 1");
  }
}

template <class Part>
GradedSeries<Part> LieSeriesChain::apply(const GradedSeries<Part>& target, int max_order) const {
  GradedSeries<Part> cur = target.truncated(max_order);
  for (const auto& X : fields_) cur = lie_series_apply(X, cur, max_order);
  return cur;
}

template <class Part>
GradedSeries<Part> LieSeriesChain::apply_inverse(const GradedSeries<Part>& target,
                                                 int max_order) const {
  GradedSeries<Part> cur = target.truncated(max_order);
  for (auto it = fields_.rbegin(); it != fields_.rend(); ++it)
    cur = lie_series_apply(-*it, cur, max_order);
  return cur;
}

template GradedSeries<HomPoly> LieSeriesChain::apply(const GradedSeries<HomPoly>&, int) const;
template GradedSeries<HomVectorField> LieSeriesChain::apply(const GradedSeries<HomVectorField>&,
                                                            int) const;
template GradedSeries<HomPoly> LieSeriesChain::apply_inverse(const GradedSeries<HomPoly>&,
                                                             int) const;
template GradedSeries<HomVectorField> LieSeriesChain::apply_inverse(
    const GradedSeries<HomVectorField>&, int) const;

CoordinateMap LieSeriesChain::apply(const CoordinateMap& target, int max_order) const {
  CoordinateMap cur = target.truncated(max_order);
  for (const auto& X : fields_) cur = lie_series_apply(X, cur, max_order);
  return cur;
}

CoordinateMap LieSeriesChain::apply_inverse(const CoordinateMap& target, int max_order) const {
  CoordinateMap cur = target.truncated(max_order);
  for (auto it = fields_.rbegin(); it != fields_.rend(); ++it)
    cur = lie_series_apply(-*it, cur, max_order);
  return cur;
}

Point LieSeriesChain::map_point(std::span<const Complex> x, double tolerance) const {
  Point y(x.begin(), x.end());
  for (auto it = fields_.rbegin(); it != fields_.rend(); ++it) y = lie_flow_point(*it, y, tolerance);
  return y;
}

Point LieSeriesChain::map_point_inverse(std::span<const Complex> x, double tolerance) const {
  Point y(x.begin(), x.end());
  for (const auto& X : fields_) y = lie_flow_point(-X, y, tolerance);
  return y;
}

}  // namespace siegel
