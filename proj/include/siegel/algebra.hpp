#ifndef SIEGEL_ALGEBRA_HPP
#define SIEGEL_ALGEBRA_HPP

// Sparse homogeneous polynomials and polynomial vector fields over complex
// doubles, graded series built from them, and the l1 coefficient norm.
//
// Grading convention: a homogeneous polynomial of degree d has order d - 1,
// and a vector field of order s has components of degree s + 1.  With this
// labelling the Lie derivative along a field of order r raises the order of
// functions and fields alike by exactly r.

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include <boost/multiprecision/complex128.hpp>

namespace siegel {

/// Coefficients carry a 113-bit mantissa per part.  Transform coefficients
/// arise from heavy cancellation between much larger intermediate terms, and
/// double precision loses up to ten digits by order 15.
using Real = boost::multiprecision::float128;
using Complex = boost::multiprecision::complex128;
using Point = std::vector<Complex>;

inline double to_double(const Real& x) { return static_cast<double>(x); }
/// |c| rounded to double.
inline double magnitude(const Complex& c) { return static_cast<double>(abs(c)); }
inline std::complex<double> to_std(const Complex& c) {
  return {static_cast<double>(c.real()), static_cast<double>(c.imag())};
}
inline Complex from_std(std::complex<double> c) { return Complex(c.real(), c.imag()); }

/// Coefficients with modulus below this are never stored.
inline constexpr double kPruneThreshold = 1e-300;

/// Exponent vector k in N^n with cached degree |k|.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  static MultiIndex zero(std::size_t n);
  static MultiIndex unit(std::size_t n, std::size_t j);

  std::size_t size() const noexcept { return exps_.size(); }
  int degree() const noexcept { return degree_; }
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }

  MultiIndex operator+(const MultiIndex& other) const;
  /// k - e_j; requires k_j > 0.
  MultiIndex lowered(std::size_t j) const;
  MultiIndex raised(std::size_t j) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// Canonical order: by degree, then x1-major descending (x^2 < xy < y^2 for n = 2).
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// All multi-indices of n variables with the given degree, in canonical order.
std::vector<MultiIndex> enumerate_multi_indices(std::size_t n, int degree);

/// Number of monomials of degree d in n variables.
std::size_t monomial_count(std::size_t n, int degree);

class HomPoly {
 public:
  using Terms = std::map<MultiIndex, Complex, GradedLexLess>;

  HomPoly() = default;
  HomPoly(std::size_t n, int degree);

  static HomPoly monomial(const MultiIndex& k, Complex c);
  static HomPoly coordinate(std::size_t n, std::size_t j);

  std::size_t vars() const noexcept { return n_; }
  int degree() const noexcept { return degree_; }
  int order() const noexcept { return degree_ - 1; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Complex coeff(const MultiIndex& k) const;
  /// Adds c to the coefficient of x^k, dropping the entry if it cancels.
  void add_term(const MultiIndex& k, Complex c);
  void set_term(const MultiIndex& k, Complex c);

  HomPoly& operator+=(const HomPoly& g);
  HomPoly& operator-=(const HomPoly& g);
  HomPoly& operator*=(Complex c);
  /// this += c * g
  HomPoly& add_scaled(const HomPoly& g, Complex c);

  HomPoly operator-() const;
  friend HomPoly operator+(HomPoly f, const HomPoly& g) { return f += g; }
  friend HomPoly operator-(HomPoly f, const HomPoly& g) { return f -= g; }
  friend HomPoly operator*(HomPoly f, Complex c) { return f *= c; }
  friend HomPoly operator*(Complex c, HomPoly f) { return f *= c; }

  HomPoly derivative(std::size_t j) const;
  Complex operator()(std::span<const Complex> x) const;

  friend bool operator==(const HomPoly&, const HomPoly&) = default;

 private:
  void check_compatible(const HomPoly& g) const;

  std::size_t n_ = 0;
  int degree_ = 0;
  Terms terms_;
};

HomPoly poly_add(const HomPoly& f, const HomPoly& g);
HomPoly poly_mul(const HomPoly& f, const HomPoly& g);
/// Sum of coefficient moduli.
double poly_norm(const HomPoly& f);

class HomVectorField {
 public:
  HomVectorField() = default;
  /// Zero field of the given order (components of degree order + 1).
  HomVectorField(std::size_t n, int order);
  explicit HomVectorField(std::vector<HomPoly> components);

  std::size_t vars() const noexcept { return comps_.size(); }
  int order() const noexcept { return order_; }
  const HomPoly& operator[](std::size_t j) const { return comps_[j]; }
  const std::vector<HomPoly>& components() const noexcept { return comps_; }
  bool is_zero() const noexcept;

  void set_component(std::size_t j, HomPoly p);
  void add_term(std::size_t j, const MultiIndex& k, Complex c);

  HomVectorField& operator+=(const HomVectorField& v);
  HomVectorField& operator-=(const HomVectorField& v);
  HomVectorField& operator*=(Complex c);
  HomVectorField& add_scaled(const HomVectorField& v, Complex c);

  HomVectorField operator-() const;
  friend HomVectorField operator+(HomVectorField a, const HomVectorField& b) { return a += b; }
  friend HomVectorField operator-(HomVectorField a, const HomVectorField& b) { return a -= b; }
  friend HomVectorField operator*(HomVectorField a, Complex c) { return a *= c; }
  friend HomVectorField operator*(Complex c, HomVectorField a) { return a *= c; }

  Point operator()(std::span<const Complex> x) const;

  friend bool operator==(const HomVectorField&, const HomVectorField&) = default;

 private:
  void check_compatible(const HomVectorField& v) const;

  int order_ = 0;
  std::vector<HomPoly> comps_;
};

/// Sum of component norms.
double vf_norm(const HomVectorField& X);

/// ||f|| rho^deg f: an upper bound of sup |f| on the polydisk of radius rho.
double sup_norm_bound(const HomPoly& f, double rho);
/// sum_j ||X_j|| rho^(s+1).
double sup_norm_bound(const HomVectorField& X, double rho);

/// Zero element of a given order, for either kind of graded part.
template <class Part>
Part zero_part(std::size_t n, int order);

template <>
inline HomPoly zero_part<HomPoly>(std::size_t n, int order) {
  return HomPoly(n, order + 1);
}

template <>
inline HomVectorField zero_part<HomVectorField>(std::size_t n, int order) {
  return HomVectorField(n, order);
}

inline double part_norm(const HomPoly& f) { return poly_norm(f); }
inline double part_norm(const HomVectorField& X) { return vf_norm(X); }

/// Truncated graded expansion with slots for orders 0..max_order.
/// Contributions above max_order are dropped on insertion.
template <class Part>
class GradedSeries {
 public:
  GradedSeries() = default;
  GradedSeries(std::size_t n, int max_order) : n_(n) {
    parts_.reserve(static_cast<std::size_t>(max_order + 1));
    for (int o = 0; o <= max_order; ++o) parts_.push_back(zero_part<Part>(n, o));
  }

  std::size_t vars() const noexcept { return n_; }
  int max_order() const noexcept { return static_cast<int>(parts_.size()) - 1; }

  const Part& operator[](int order) const { return parts_.at(static_cast<std::size_t>(order)); }

  void set(int order, Part p);
  void add(const Part& p);
  void add_scaled(const Part& p, Complex c);

  GradedSeries truncated(int max_order) const;
  bool is_zero() const;

 private:
  std::size_t n_ = 0;
  std::vector<Part> parts_;
};

using FunctionSeries = GradedSeries<HomPoly>;
using FieldSeries = GradedSeries<HomVectorField>;

/// Graded product of two function series, truncated at max_order.
FunctionSeries truncated_product(const FunctionSeries& a, const FunctionSeries& b, int max_order);
Complex evaluate(const FunctionSeries& f, std::span<const Complex> x);

/// A map C^n -> C^n without constant term, one function series per coordinate.
class CoordinateMap {
 public:
  CoordinateMap() = default;
  CoordinateMap(std::size_t n, int max_order);
  explicit CoordinateMap(std::vector<FunctionSeries> components);

  static CoordinateMap identity(std::size_t n, int max_order);

  std::size_t vars() const noexcept { return comps_.size(); }
  int max_order() const noexcept { return comps_.empty() ? -1 : comps_.front().max_order(); }
  const FunctionSeries& operator[](std::size_t j) const { return comps_[j]; }
  FunctionSeries& operator[](std::size_t j) { return comps_[j]; }
  const std::vector<FunctionSeries>& components() const noexcept { return comps_; }

  /// Order-s graded part packaged as a vector field (component j = degree s+1 part of map j).
  HomVectorField graded_part(int order) const;
  Point operator()(std::span<const Complex> x) const;
  CoordinateMap truncated(int max_order) const;

 private:
  std::vector<FunctionSeries> comps_;
};

/// f(G(x)) truncated at max_order.
FunctionSeries substitute(const FunctionSeries& f, const CoordinateMap& G, int max_order);
/// F(G(x)) componentwise, truncated at max_order.
CoordinateMap substitute(const CoordinateMap& F, const CoordinateMap& G, int max_order);

}  // namespace siegel

#endif  // SIEGEL_ALGEBRA_HPP
