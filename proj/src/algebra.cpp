#include "siegel/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "siegel/errors.hpp"

namespace siegel {

// ---------------------------------------------------------------- MultiIndex

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw std::invalid_argument("MultiIndex: negative exponent");
    degree_ += e;
  }
}

MultiIndex MultiIndex::zero(std::size_t n) { return MultiIndex(std::vector<int>(n, 0)); }

MultiIndex MultiIndex::unit(std::size_t n, std::size_t j) {
  std::vector<int> e(n, 0);
  e.at(j) = 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.size() != size()) throw DegreeMismatch("MultiIndex: variable count mismatch");
  MultiIndex out = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
  out.degree_ += other.degree_;
  return out;
}

MultiIndex MultiIndex::lowered(std::size_t j) const {
  if (exps_.at(j) == 0) throw std::invalid_argument("MultiIndex::lowered: zero exponent");
  MultiIndex out = *this;
  --out.exps_[j];
  --out.degree_;
  return out;
}

MultiIndex MultiIndex::raised(std::size_t j) const {
  MultiIndex out = *this;
  ++out.exps_.at(j);
  ++out.degree_;
  return out;
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  // x1-major descending: a larger leading exponent sorts first
  return std::lexicographical_compare(b.exponents().begin(), b.exponents().end(),
                                      a.exponents().begin(), a.exponents().end());
}

namespace {

void enumerate_rec(std::size_t pos, int remaining, std::vector<int>& cur,
                   std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    enumerate_rec(pos + 1, remaining - e, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_multi_indices(std::size_t n, int degree) {
  std::vector<MultiIndex> out;
  if (n == 0 || degree < 0) return out;
  std::vector<int> cur(n, 0);
  enumerate_rec(0, degree, cur, out);
  return out;
}

std::size_t monomial_count(std::size_t n, int degree) {
  if (n == 0 || degree < 0) return 0;
  // binom(degree + n - 1, n - 1)
  std::size_t num = 1;
  for (std::size_t i = 1; i < n; ++i) num = num * (static_cast<std::size_t>(degree) + i) / i;
  return num;
}

// ------------------------------------------------------------------ HomPoly

HomPoly::HomPoly(std::size_t n, int degree) : n_(n), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("HomPoly: negative degree");
}

HomPoly HomPoly::monomial(const MultiIndex& k, Complex c) {
  HomPoly p(k.size(), k.degree());
  p.add_term(k, c);
  return p;
}

HomPoly HomPoly::coordinate(std::size_t n, std::size_t j) {
  return monomial(MultiIndex::unit(n, j), 1.0);
}

Complex HomPoly::coeff(const MultiIndex& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Complex{} : it->second;
}

void HomPoly::add_term(const MultiIndex& k, Complex c) {
  if (k.size() != n_ || k.degree() != degree_)
    throw DegreeMismatch("HomPoly::add_term: monomial " + format_exponents(k.exponents()) +
                         " does not fit degree " + std::to_string(degree_));
  if (c == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (magnitude(it->second) < kPruneThreshold) terms_.erase(it);
  } else if (magnitude(c) < kPruneThreshold) {
    terms_.erase(it);
  }
}

void HomPoly::set_term(const MultiIndex& k, Complex c) {
  if (k.size() != n_ || k.degree() != degree_)
    throw DegreeMismatch("HomPoly::set_term: monomial does not fit");
  if (magnitude(c) < kPruneThreshold)
    terms_.erase(k);
  else
    terms_[k] = c;
}

void HomPoly::check_compatible(const HomPoly& g) const {
  if (g.n_ != n_ || g.degree_ != degree_)
    throw DegreeMismatch("HomPoly: degree mismatch (" + std::to_string(degree_) + " vs " +
                         std::to_string(g.degree_) + ")");
}

HomPoly& HomPoly::operator+=(const HomPoly& g) { return add_scaled(g, 1.0); }
HomPoly& HomPoly::operator-=(const HomPoly& g) { return add_scaled(g, -1.0); }

HomPoly& HomPoly::add_scaled(const HomPoly& g, Complex c) {
  check_compatible(g);
  if (c == Complex{}) return *this;
  for (const auto& [k, v] : g.terms_) add_term(k, c * v);
  return *this;
}

HomPoly& HomPoly::operator*=(Complex c) {
  if (c == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (magnitude(it->second) < kPruneThreshold)
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

HomPoly HomPoly::operator-() const {
  HomPoly out = *this;
  for (auto& [k, v] : out.terms_) v = -v;
  return out;
}

HomPoly HomPoly::derivative(std::size_t j) const {
  if (degree_ == 0) return HomPoly(n_, 0);
  HomPoly out(n_, degree_ - 1);
  for (const auto& [k, v] : terms_) {
    if (k[j] == 0) continue;
    out.add_term(k.lowered(j), static_cast<double>(k[j]) * v);
  }
  return out;
}

namespace {

// powers[j][e] = x_j^e
std::vector<std::vector<Complex>> power_table(std::span<const Complex> x, int max_degree) {
  std::vector<std::vector<Complex>> pw(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    pw[j].resize(static_cast<std::size_t>(max_degree) + 1);
    pw[j][0] = 1.0;
    for (int e = 1; e <= max_degree; ++e) pw[j][e] = pw[j][e - 1] * x[j];
  }
  return pw;
}

Complex evaluate_with(const HomPoly& f, const std::vector<std::vector<Complex>>& pw) {
  Complex sum{};
  for (const auto& [k, v] : f.terms()) {
    Complex m = v;
    for (std::size_t j = 0; j < k.size(); ++j)
      if (k[j]) m *= pw[j][k[j]];
    sum += m;
  }
  return sum;
}

}  // namespace

Complex HomPoly::operator()(std::span<const Complex> x) const {
  if (x.size() != n_) throw std::invalid_argument("HomPoly: point dimension mismatch");
  return evaluate_with(*this, power_table(x, degree_));
}

HomPoly poly_add(const HomPoly& f, const HomPoly& g) { return f + g; }

HomPoly poly_mul(const HomPoly& f, const HomPoly& g) {
  if (f.vars() != g.vars()) throw DegreeMismatch("poly_mul: variable count mismatch");
  HomPoly out(f.vars(), f.degree() + g.degree());
  for (const auto& [a, ca] : f.terms())
    for (const auto& [b, cb] : g.terms()) out.add_term(a + b, ca * cb);
  return out;
}

double poly_norm(const HomPoly& f) {
  double s = 0.0;
  for (const auto& [k, v] : f.terms()) s += magnitude(v);
  return s;
}

// ----------------------------------------------------------- HomVectorField

HomVectorField::HomVectorField(std::size_t n, int order) : order_(order) {
  if (order < -1) throw std::invalid_argument("HomVectorField: order below -1");
  comps_.reserve(n);
  for (std::size_t j = 0; j < n; ++j) comps_.emplace_back(n, order + 1);
}

HomVectorField::HomVectorField(std::vector<HomPoly> components) : comps_(std::move(components)) {
  if (comps_.empty()) throw std::invalid_argument("HomVectorField: no components");
  const std::size_t n = comps_.size();
  const int degree = comps_.front().degree();
  for (const auto& c : comps_)
    if (c.vars() != n || c.degree() != degree)
      throw DegreeMismatch("HomVectorField: components must share degree and variable count");
  order_ = degree - 1;
}

bool HomVectorField::is_zero() const noexcept {
  return std::all_of(comps_.begin(), comps_.end(), [](const HomPoly& p) { return p.is_zero(); });
}

void HomVectorField::set_component(std::size_t j, HomPoly p) {
  if (p.vars() != vars() || p.degree() != order_ + 1)
    throw DegreeMismatch("HomVectorField::set_component: degree mismatch");
  comps_.at(j) = std::move(p);
}

void HomVectorField::add_term(std::size_t j, const MultiIndex& k, Complex c) {
  comps_.at(j).add_term(k, c);
}

void HomVectorField::check_compatible(const HomVectorField& v) const {
  if (v.vars() != vars() || v.order_ != order_)
    throw DegreeMismatch("HomVectorField: order mismatch (" + std::to_string(order_) + " vs " +
                         std::to_string(v.order_) + ")");
}

HomVectorField& HomVectorField::operator+=(const HomVectorField& v) { return add_scaled(v, 1.0); }
HomVectorField& HomVectorField::operator-=(const HomVectorField& v) { return add_scaled(v, -1.0); }

HomVectorField& HomVectorField::add_scaled(const HomVectorField& v, Complex c) {
  check_compatible(v);
  for (std::size_t j = 0; j < comps_.size(); ++j) comps_[j].add_scaled(v.comps_[j], c);
  return *this;
}

HomVectorField& HomVectorField::operator*=(Complex c) {
  for (auto& p : comps_) p *= c;
  return *this;
}

HomVectorField HomVectorField::operator-() const {
  HomVectorField out = *this;
  for (auto& p : out.comps_) p = -p;
  return out;
}

Point HomVectorField::operator()(std::span<const Complex> x) const {
  if (x.size() != vars()) throw std::invalid_argument("HomVectorField: point dimension mismatch");
  const auto pw = power_table(x, order_ + 1);
  Point out(vars());
  for (std::size_t j = 0; j < vars(); ++j) out[j] = evaluate_with(comps_[j], pw);
  return out;
}

double vf_norm(const HomVectorField& X) {
  double s = 0.0;
  for (const auto& p : X.components()) s += poly_norm(p);
  return s;
}

double sup_norm_bound(const HomPoly& f, double rho) {
  if (rho < 0) throw std::invalid_argument("sup_norm_bound: negative radius");
  return poly_norm(f) * std::pow(rho, f.degree());
}

double sup_norm_bound(const HomVectorField& X, double rho) {
  if (rho < 0) throw std::invalid_argument("sup_norm_bound: negative radius");
  return vf_norm(X) * std::pow(rho, X.order() + 1);
}

// ------------------------------------------------------------- GradedSeries

template <class Part>
void GradedSeries<Part>::set(int order, Part p) {
  if (order < 0 || order > max_order()) return;
  if (p.order() != order || p.vars() != n_)
    throw DegreeMismatch("GradedSeries::set: part order does not match slot");
  parts_[static_cast<std::size_t>(order)] = std::move(p);
}

template <class Part>
void GradedSeries<Part>::add(const Part& p) {
  add_scaled(p, 1.0);
}

template <class Part>
void GradedSeries<Part>::add_scaled(const Part& p, Complex c) {
  const int o = p.order();
  if (o < 0 || o > max_order()) return;
  parts_[static_cast<std::size_t>(o)].add_scaled(p, c);
}

template <class Part>
GradedSeries<Part> GradedSeries<Part>::truncated(int max_order) const {
  GradedSeries out(n_, max_order);
  for (int o = 0; o <= std::min(max_order, this->max_order()); ++o)
    out.parts_[static_cast<std::size_t>(o)] = parts_[static_cast<std::size_t>(o)];
  return out;
}

template <class Part>
bool GradedSeries<Part>::is_zero() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const Part& p) { return p.is_zero(); });
}

template class GradedSeries<HomPoly>;
template class GradedSeries<HomVectorField>;

FunctionSeries truncated_product(const FunctionSeries& a, const FunctionSeries& b, int max_order) {
  FunctionSeries out(a.vars(), max_order);
  for (int i = 0; i <= a.max_order(); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j <= b.max_order(); ++j) {
      // (i+1) + (j+1) = degree, order = i + j + 1
      if (i + j + 1 > max_order) break;
      if (b[j].is_zero()) continue;
      out.add(poly_mul(a[i], b[j]));
    }
  }
  return out;
}

Complex evaluate(const FunctionSeries& f, std::span<const Complex> x) {
  const auto pw = power_table(x, f.max_order() + 1);
  Complex sum{};
  for (int o = 0; o <= f.max_order(); ++o) sum += evaluate_with(f[o], pw);
  return sum;
}

// ------------------------------------------------------------ CoordinateMap

CoordinateMap::CoordinateMap(std::size_t n, int max_order) {
  comps_.reserve(n);
  for (std::size_t j = 0; j < n; ++j) comps_.emplace_back(n, max_order);
}

CoordinateMap::CoordinateMap(std::vector<FunctionSeries> components)
    : comps_(std::move(components)) {
  for (const auto& c : comps_)
    if (c.vars() != comps_.size() || c.max_order() != comps_.front().max_order())
      throw DegreeMismatch("CoordinateMap: inconsistent components");
}

CoordinateMap CoordinateMap::identity(std::size_t n, int max_order) {
  CoordinateMap id(n, max_order);
  for (std::size_t j = 0; j < n; ++j) id.comps_[j].add(HomPoly::coordinate(n, j));
  return id;
}

HomVectorField CoordinateMap::graded_part(int order) const {
  std::vector<HomPoly> parts;
  parts.reserve(comps_.size());
  for (const auto& c : comps_) parts.push_back(c[order]);
  return HomVectorField(std::move(parts));
}

Point CoordinateMap::operator()(std::span<const Complex> x) const {
  const auto pw = power_table(x, max_order() + 1);
  Point out(vars());
  for (std::size_t j = 0; j < vars(); ++j) {
    Complex sum{};
    for (int o = 0; o <= max_order(); ++o) sum += evaluate_with(comps_[j][o], pw);
    out[j] = sum;
  }
  return out;
}

CoordinateMap CoordinateMap::truncated(int max_order) const {
  std::vector<FunctionSeries> out;
  for (const auto& c : comps_) out.push_back(c.truncated(max_order));
  return CoordinateMap(std::move(out));
}

namespace {

class PowerCache {
 public:
  PowerCache(const CoordinateMap& G, int max_order) : G_(G), max_order_(max_order), pw_(G.vars()) {}

  // G_j^e truncated, e >= 1
  const FunctionSeries& get(std::size_t j, int e) {
    auto& v = pw_[j];
    if (v.empty()) v.push_back(G_[j].truncated(max_order_));
    while (static_cast<int>(v.size()) < e)
      v.push_back(truncated_product(v.back(), v.front(), max_order_));
    return v[static_cast<std::size_t>(e - 1)];
  }

 private:
  const CoordinateMap& G_;
  int max_order_;
  std::vector<std::vector<FunctionSeries>> pw_;
};

FunctionSeries substitute_with(const FunctionSeries& f, PowerCache& cache, std::size_t n,
                               int max_order) {
  FunctionSeries out(n, max_order);
  for (int o = 0; o <= std::min(f.max_order(), max_order); ++o) {
    for (const auto& [k, c] : f[o].terms()) {
      FunctionSeries term;
      bool first = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (k[j] == 0) continue;
        const FunctionSeries& p = cache.get(j, k[j]);
        term = first ? p : truncated_product(term, p, max_order);
        first = false;
      }
      for (int q = 0; q <= max_order; ++q) out.add_scaled(term[q], c);
    }
  }
  return out;
}

}  // namespace

FunctionSeries substitute(const FunctionSeries& f, const CoordinateMap& G, int max_order) {
  if (f.vars() != G.vars()) throw DegreeMismatch("substitute: variable count mismatch");
  PowerCache cache(G, max_order);
  return substitute_with(f, cache, G.vars(), max_order);
}

CoordinateMap substitute(const CoordinateMap& F, const CoordinateMap& G, int max_order) {
  if (F.vars() != G.vars()) throw DegreeMismatch("substitute: variable count mismatch");
  PowerCache cache(G, max_order);
  std::vector<FunctionSeries> out;
  for (std::size_t j = 0; j < F.vars(); ++j)
    out.push_back(substitute_with(F[j], cache, G.vars(), max_order));
  return CoordinateMap(std::move(out));
}

}  // namespace siegel
