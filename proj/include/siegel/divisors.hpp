#ifndef SIEGEL_DIVISORS_HPP
#define SIEGEL_DIVISORS_HPP

// Small-divisor sequences beta, alpha, sigma, the sums Gamma and Bruno, and
// the index-set combinatorics that control how divisors accumulate.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "siegel/maps.hpp"

namespace siegel {

/// Candidate sets visited before enumeration gives up.
inline constexpr std::uint64_t kEnumerationGuard = 10'000'000;

/// beta_0 = 1, beta_r = min over |k| = r+1 and j of |lambda^k / lambda_j - 1|.
/// Throws NonResonanceViolated if some beta_r <= eps_res.
std::vector<double> beta_seq(const Spectrum& spec, int R_max,
                             double eps_res = kDefaultResonanceThreshold);
/// Running minimum of beta.
std::vector<double> alpha_seq(std::span<const double> beta);
/// sigma_0 = 1, sigma_r = alpha_r / r^2.
std::vector<double> sigma_seq(std::span<const double> alpha);

/// alpha_r >= c / r^tau for every r beyond the table.
struct DiophantineFloor {
  double c = 1.0;
  double tau = 1.0;
};

/// A partial sum together with an upper bound on the neglected tail.
struct SeriesEstimate {
  double partial = 0.0;
  double tail = 0.0;
  /// Last index included (R_max for Gamma, K for the dyadic sum).
  int truncation = 0;
  bool tail_available = false;

  double upper() const { return partial + tail; }
};

/// -sum_{r=1}^{R} ln alpha_r / (r(r+1)).
SeriesEstimate gamma_sum(std::span<const double> alpha, int R_max,
                         std::optional<DiophantineFloor> floor = std::nullopt);
/// -sum_{k=1}^{K} ln alpha_{2^k - 1} / 2^k with the largest K such that 2^K - 1 <= R_max.
SeriesEstimate bruno_sum(std::span<const double> alpha, int R_max,
                         std::optional<DiophantineFloor> floor = std::nullopt);

struct DivisorTable {
  Spectrum spectrum;
  int R_max = 0;
  std::vector<double> beta;
  std::vector<double> alpha;
  std::vector<double> sigma;
  SeriesEstimate gamma;
  SeriesEstimate bruno;
  std::optional<DiophantineFloor> floor;

  static DivisorTable build(const Spectrum& spec, int R_max,
                            std::optional<DiophantineFloor> floor = std::nullopt,
                            double eps_res = kDefaultResonanceThreshold);
};

/// Sorted multiset of non-negative indices.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<int> elems);

  const std::vector<int>& elements() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }
  int max() const { return elems_.empty() ? 0 : elems_.back(); }
  std::size_t count(int value) const;

  IndexSet united(const IndexSet& other) const;
  IndexSet with(int value) const;
  /// prod 1/sigma_j, multiplied in ascending order of j.
  double divisor_product(std::span<const double> sigma) const;
  std::string str() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<int> elems_;
};

/// (floor(s/s), floor(s/(s-1)), ..., floor(s/2)); empty for s < 2.
IndexSet istar(int s);

/// I <| I': pad the shorter with zeros, sort, compare elementwise.
bool triangle_order(const IndexSet& I, const IndexSet& J);

struct CheckReport {
  std::string name;
  std::uint64_t checks = 0;
  std::vector<std::string> counterexamples;

  bool passed() const { return counterexamples.empty(); }
};

/// Structure of I*_s: largest index, multiplicities, and the inclusion
/// ({r} u I*_r u I*_s) <| I*_{r+s} for 0 < r <= s, r + s <= s_max.
std::vector<CheckReport> istar_properties_check(int s_max);

/// Membership in J_{r,s}: s-1 indices in 0..min(r, floor(s/2)) with I <| I*_s.
bool jset_contains(int r, int s, const IndexSet& I);
/// Visits every element of J_{r,s}; throws EnumerationTooLarge past `guard` sets.
void jset_for_each(int r, int s, const std::function<void(const IndexSet&)>& visit,
                   std::uint64_t guard = kEnumerationGuard);
std::vector<IndexSet> jset_enumerate(int r, int s, std::uint64_t guard = kEnumerationGuard);

struct TExact {
  double value = 1.0;
  IndexSet argmax;
};

/// max over J_{r,s} of prod 1/sigma_j; T_{0,s} = 1.
TExact t_exact_with_argmax(int r, int s, std::span<const double> sigma,
                           std::uint64_t guard = kEnumerationGuard);
double t_exact(int r, int s, std::span<const double> sigma,
               std::uint64_t guard = kEnumerationGuard);

struct AccumulationConstant {
  /// sum_{k=1}^{terms} 2 ln k / (k(k+1))
  double partial = 0.0;
  /// 2 (ln K + 1) / K bounds the remainder.
  double tail = 0.0;
  std::uint64_t terms = 0;

  double upper() const { return partial + tail; }
};

AccumulationConstant accumulation_constant(std::uint64_t terms);
/// Cached value at 10^7 terms.
const AccumulationConstant& accumulation_constant();

struct TBound {
  /// prod over I*_s of 1/sigma_j; dominates T_{r,s} for every r.
  double istar_product = 1.0;
  /// prod over {s} u I*_s of 1/sigma_j; dominates T_{r,s} / sigma_s.
  double sharp_product = 1.0;
  /// gamma^s e^{s Gamma} with gamma = e^a, both upper estimates.
  double closed_form = 1.0;
  /// False when the Gamma tail is unknown and only the partial sum was used.
  bool closed_form_rigorous = false;
};

TBound t_bound(int r, int s, const DivisorTable& table);

/// Sum over compositions j_1 + ... + j_k = s with j_i >= r of
/// prod_i (1 + (r + m) / (j_1 + ... + j_i)).
double theta_exact(int r, int s, int k, double m, std::uint64_t guard = kEnumerationGuard);
/// r^{k-1} (2 + m/r)^k binom(s/r - 1, k - 1).
double theta_bound(int r, int s, int k, double m);
/// Number of compositions of s into k parts each >= r.
std::uint64_t composition_count(int r, int s, int k);
/// Enumerated count of the same compositions.
std::uint64_t composition_count_enumerated(int r, int s, int k);

/// binom(x, j) for real x and integer j >= 0 by the falling-factorial product.
double real_binomial(double x, int j);

/// Exhaustive audit of the I*_s structure, the J_{r,s} inclusions and the
/// T_{r,s} inequalities for r <= s, r + s <= size_max, using `sigma`.
std::vector<CheckReport> verify_combinatorial_lemmas(int size_max, std::span<const double> sigma);

}  // namespace siegel

#endif  // SIEGEL_DIVISORS_HPP
