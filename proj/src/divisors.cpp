#include "siegel/divisors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "siegel/errors.hpp"

namespace siegel {

namespace {

// Minimum of |exp(<k, mu+i omega> - mu_j - i omega_j) - 1| over |k| = degree.
void min_divisor_rec(const Spectrum& spec, std::size_t pos, int remaining, double a, double b,
                     double& best) {
  const std::size_t n = spec.size();
  if (pos + 1 == n) {
    a += remaining * spec.mu()[pos];
    b += remaining * spec.omega()[pos];
    for (std::size_t j = 0; j < n; ++j)
      best = std::min(best, std::abs(exp_minus_one(a - spec.mu()[j], b - spec.omega()[j])));
    return;
  }
  for (int e = remaining; e >= 0; --e)
    min_divisor_rec(spec, pos + 1, remaining - e, a + e * spec.mu()[pos],
                    b + e * spec.omega()[pos], best);
}

}  // namespace

std::vector<double> beta_seq(const Spectrum& spec, int R_max, double eps_res) {
  if (R_max < 1) throw std::invalid_argument("beta_seq: R_max must be >= 1");
  std::vector<double> beta(static_cast<std::size_t>(R_max) + 1, 1.0);
  for (int r = 1; r <= R_max; ++r) {
    double best = std::numeric_limits<double>::infinity();
    min_divisor_rec(spec, 0, r + 1, 0.0, 0.0, best);
    if (best <= eps_res) throw NonResonanceViolated(r, best);
    beta[static_cast<std::size_t>(r)] = best;
  }
  return beta;
}

std::vector<double> alpha_seq(std::span<const double> beta) {
  std::vector<double> alpha(beta.size());
  double m = 1.0;
  for (std::size_t r = 0; r < beta.size(); ++r) {
    m = std::min(m, beta[r]);
    alpha[r] = m;
  }
  return alpha;
}

std::vector<double> sigma_seq(std::span<const double> alpha) {
  std::vector<double> sigma(alpha.size(), 1.0);
  for (std::size_t r = 1; r < alpha.size(); ++r)
    sigma[r] = alpha[r] / (static_cast<double>(r) * static_cast<double>(r));
  return sigma;
}

SeriesEstimate gamma_sum(std::span<const double> alpha, int R_max,
                         std::optional<DiophantineFloor> floor) {
  if (R_max < 1 || static_cast<std::size_t>(R_max) >= alpha.size())
    throw std::invalid_argument("gamma_sum: R_max outside the alpha table");
  SeriesEstimate out;
  out.truncation = R_max;
  for (int r = 1; r <= R_max; ++r)
    out.partial -= std::log(alpha[static_cast<std::size_t>(r)]) /
                   (static_cast<double>(r) * (static_cast<double>(r) + 1.0));
  if (floor) {
    // sum_{r>R} ln r / r^2 <= (ln R + 1)/R once ln x / x^2 is decreasing (x >= 2)
    const double R = std::max(R_max, 2);
    double head = 0.0;
    if (R_max < 2) head = floor->tau * std::log(2.0) / 6.0;
    out.tail = head + floor->tau * (std::log(R) + 1.0) / R +
               std::max(0.0, -std::log(floor->c)) / (R_max + 1.0);
    out.tail_available = true;
  }
  return out;
}

SeriesEstimate bruno_sum(std::span<const double> alpha, int R_max,
                         std::optional<DiophantineFloor> floor) {
  if (R_max < 1 || static_cast<std::size_t>(R_max) >= alpha.size())
    throw std::invalid_argument("bruno_sum: R_max outside the alpha table");
  SeriesEstimate out;
  int K = 0;
  while ((std::int64_t{1} << (K + 1)) - 1 <= R_max) ++K;
  out.truncation = K;
  for (int k = 1; k <= K; ++k) {
    const auto idx = static_cast<std::size_t>((std::int64_t{1} << k) - 1);
    out.partial -= std::log(alpha[idx]) / std::ldexp(1.0, k);
  }
  if (floor) {
    // sum_{k>K} k / 2^k = (K+2) / 2^K
    out.tail = floor->tau * std::log(2.0) * (K + 2.0) / std::ldexp(1.0, K) +
               std::max(0.0, -std::log(floor->c)) / std::ldexp(1.0, K);
    out.tail_available = true;
  }
  return out;
}

DivisorTable DivisorTable::build(const Spectrum& spec, int R_max,
                                 std::optional<DiophantineFloor> floor, double eps_res) {
  DivisorTable t;
  t.spectrum = spec;
  t.R_max = R_max;
  t.beta = beta_seq(spec, R_max, eps_res);
  t.alpha = alpha_seq(t.beta);
  t.sigma = sigma_seq(t.alpha);
  t.gamma = gamma_sum(t.alpha, R_max, floor);
  t.bruno = bruno_sum(t.alpha, R_max, floor);
  t.floor = floor;
  return t;
}

// ---------------------------------------------------------------- IndexSet

IndexSet::IndexSet(std::vector<int> elems) : elems_(std::move(elems)) {
  for (int e : elems_)
    if (e < 0) throw std::invalid_argument("IndexSet: negative index");
  std::sort(elems_.begin(), elems_.end());
}

std::size_t IndexSet::count(int value) const {
  const auto [lo, hi] = std::equal_range(elems_.begin(), elems_.end(), value);
  return static_cast<std::size_t>(hi - lo);
}

IndexSet IndexSet::united(const IndexSet& other) const {
  std::vector<int> v(elems_);
  v.insert(v.end(), other.elems_.begin(), other.elems_.end());
  return IndexSet(std::move(v));
}

IndexSet IndexSet::with(int value) const {
  std::vector<int> v(elems_);
  v.push_back(value);
  return IndexSet(std::move(v));
}

double IndexSet::divisor_product(std::span<const double> sigma) const {
  double p = 1.0;
  for (int e : elems_) {
    if (static_cast<std::size_t>(e) >= sigma.size())
      throw std::out_of_range("IndexSet::divisor_product: sigma table too short");
    p *= 1.0 / sigma[static_cast<std::size_t>(e)];
  }
  return p;
}

std::string IndexSet::str() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < elems_.size(); ++i) os << (i ? "," : "") << elems_[i];
  os << '}';
  return os.str();
}

IndexSet istar(int s) {
  std::vector<int> v;
  for (int k = s; k >= 2; --k) v.push_back(s / k);
  return IndexSet(std::move(v));
}

bool triangle_order(const IndexSet& I, const IndexSet& J) {
  const auto& a = I.elements();
  const auto& b = J.elements();
  const std::size_t len = std::max(a.size(), b.size());
  const std::size_t pa = len - a.size();
  const std::size_t pb = len - b.size();
  for (std::size_t m = 0; m < len; ++m) {
    const int x = m < pa ? 0 : a[m - pa];
    const int y = m < pb ? 0 : b[m - pb];
    if (x > y) return false;
  }
  return true;
}

std::vector<CheckReport> istar_properties_check(int s_max) {
  CheckReport largest{"I*_s largest index is floor(s/2)", 0, {}};
  CheckReport counts{"I*_s multiplicity of k is floor(s/k) - floor(s/(k+1))", 0, {}};
  CheckReport nested{"({r} u I*_r u I*_s) <| I*_{r+s}", 0, {}};
  for (int s = 2; s <= s_max; ++s) {
    const IndexSet I = istar(s);
    ++largest.checks;
    if (I.max() != s / 2)
      largest.counterexamples.push_back("s=" + std::to_string(s) + " max=" + std::to_string(I.max()));
    for (int k = 1; k < s; ++k) {
      ++counts.checks;
      const auto expected = static_cast<std::size_t>(s / k - s / (k + 1));
      if (I.count(k) != expected)
        counts.counterexamples.push_back("s=" + std::to_string(s) + " k=" + std::to_string(k));
    }
  }
  for (int r = 1; r <= s_max; ++r) {
    for (int s = r; r + s <= s_max; ++s) {
      ++nested.checks;
      const IndexSet lhs = istar(r).united(istar(s)).with(r);
      if (!triangle_order(lhs, istar(r + s)))
        nested.counterexamples.push_back("r=" + std::to_string(r) + " s=" + std::to_string(s) +
                                         " " + lhs.str());
    }
  }
  return {largest, counts, nested};
}

// ------------------------------------------------------------------ J sets

namespace {

int jset_cap(int r, int s) { return std::min(r, s / 2); }

void jset_rec(std::vector<int>& cur, std::size_t pos, int lo, int cap,
              const std::vector<int>& star, std::uint64_t& visited, std::uint64_t guard,
              const std::function<void(const IndexSet&)>& visit) {
  if (pos == star.size()) {
    if (++visited > guard) throw EnumerationTooLarge("J-set enumeration exceeded the guard");
    visit(IndexSet(cur));
    return;
  }
  const int hi = std::min(cap, star[pos]);
  for (int v = lo; v <= hi; ++v) {
    cur[pos] = v;
    jset_rec(cur, pos + 1, v, cap, star, visited, guard, visit);
  }
}

}  // namespace

bool jset_contains(int r, int s, const IndexSet& I) {
  if (s < 1 || r < 0) return false;
  if (I.size() != static_cast<std::size_t>(s - 1)) return false;
  if (!I.elements().empty() && I.max() > jset_cap(r, s)) return false;
  return triangle_order(I, istar(s));
}

void jset_for_each(int r, int s, const std::function<void(const IndexSet&)>& visit,
                   std::uint64_t guard) {
  if (s < 1 || r < 0) throw std::invalid_argument("jset: need s >= 1 and r >= 0");
  const IndexSet target = istar(s);
  const std::vector<int>& star = target.elements();
  std::vector<int> cur(star.size(), 0);
  std::uint64_t visited = 0;
  jset_rec(cur, 0, 0, jset_cap(r, s), star, visited, guard, visit);
}

std::vector<IndexSet> jset_enumerate(int r, int s, std::uint64_t guard) {
  std::vector<IndexSet> out;
  jset_for_each(r, s, [&](const IndexSet& I) { out.push_back(I); }, guard);
  return out;
}

TExact t_exact_with_argmax(int r, int s, std::span<const double> sigma, std::uint64_t guard) {
  TExact best;
  best.value = -1.0;
  jset_for_each(
      r, s,
      [&](const IndexSet& I) {
        const double p = I.divisor_product(sigma);
        if (p > best.value) {
          best.value = p;
          best.argmax = I;
        }
      },
      guard);
  return best;
}

double t_exact(int r, int s, std::span<const double> sigma, std::uint64_t guard) {
  if (r == 0) return 1.0;
  return t_exact_with_argmax(r, s, sigma, guard).value;
}

AccumulationConstant accumulation_constant(std::uint64_t terms) {
  if (terms < 2) throw std::invalid_argument("accumulation_constant: need at least 2 terms");
  AccumulationConstant a;
  a.terms = terms;
  for (std::uint64_t k = 2; k <= terms; ++k) {
    const double kd = static_cast<double>(k);
    a.partial += 2.0 * std::log(kd) / (kd * (kd + 1.0));
  }
  const double K = static_cast<double>(terms);
  a.tail = 2.0 * (std::log(K) + 1.0) / K;
  return a;
}

const AccumulationConstant& accumulation_constant() {
  static const AccumulationConstant a = accumulation_constant(10'000'000);
  return a;
}

TBound t_bound(int /*r*/, int s, const DivisorTable& table) {
  TBound out;
  const IndexSet I = istar(s);
  out.istar_product = I.divisor_product(table.sigma);
  out.sharp_product = I.with(s).divisor_product(table.sigma);
  const double Gamma = table.gamma.tail_available ? table.gamma.upper() : table.gamma.partial;
  out.closed_form = std::exp(s * (accumulation_constant().upper() + Gamma));
  out.closed_form_rigorous = table.gamma.tail_available;
  return out;
}

// ------------------------------------------------------------------- Theta

namespace {

void theta_rec(int r, int s, int k, double m, int partial, int depth, double prod, double& sum,
               std::uint64_t& visited, std::uint64_t guard) {
  if (depth == k) {
    if (partial == s) {
      if (++visited > guard) throw EnumerationTooLarge("composition enumeration exceeded the guard");
      sum += prod;
    }
    return;
  }
  const int left = k - depth - 1;
  for (int j = r; partial + j + left * r <= s; ++j) {
    const int p = partial + j;
    theta_rec(r, s, k, m, p, depth + 1, prod * (1.0 + (r + m) / p), sum, visited, guard);
  }
}

void count_rec(int r, int s, int k, int partial, int depth, std::uint64_t& count) {
  if (depth == k) {
    if (partial == s) ++count;
    return;
  }
  const int left = k - depth - 1;
  for (int j = r; partial + j + left * r <= s; ++j) count_rec(r, s, k, partial + j, depth + 1, count);
}

}  // namespace

double theta_exact(int r, int s, int k, double m, std::uint64_t guard) {
  if (r < 1 || k < 1 || s < k * r) throw std::invalid_argument("theta_exact: need r, k >= 1, s >= kr");
  if (composition_count(r, s, k) > guard)
    throw EnumerationTooLarge("theta_exact: too many compositions");
  double sum = 0.0;
  std::uint64_t visited = 0;
  theta_rec(r, s, k, m, 0, 0, 1.0, sum, visited, guard);
  return sum;
}

double real_binomial(double x, int j) {
  if (j < 0) return 0.0;
  double b = 1.0;
  for (int i = 0; i < j; ++i) b *= (x - i) / (i + 1);
  return b;
}

double theta_bound(int r, int s, int k, double m) {
  if (r < 1 || k < 1) throw std::invalid_argument("theta_bound: need r, k >= 1");
  // 2 + m/r written as the largest factor 1 + (r+m)/r of the exact sum
  const double factor = 1.0 + (r + m) / r;
  return std::pow(static_cast<double>(r), k - 1) * std::pow(factor, k) *
         real_binomial(static_cast<double>(s) / r - 1.0, k - 1);
}

std::uint64_t composition_count(int r, int s, int k) {
  if (k < 1 || s < k * r) return 0;
  const std::uint64_t top = static_cast<std::uint64_t>(s - k * r + k - 1);
  const std::uint64_t choose = static_cast<std::uint64_t>(k - 1);
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= choose; ++i) c = c * (top - choose + i) / i;
  return c;
}

std::uint64_t composition_count_enumerated(int r, int s, int k) {
  if (k < 1 || s < k * r) return 0;
  std::uint64_t count = 0;
  count_rec(r, s, k, 0, 0, count);
  return count;
}

// -------------------------------------------------------- lemma audit

std::vector<CheckReport> verify_combinatorial_lemmas(int size_max, std::span<const double> sigma) {
  std::vector<CheckReport> out = istar_properties_check(size_max);

  CheckReport nest{"J_{r-1,s} subset of J_{r,s}", 0, {}};
  CheckReport closure{"{r} u I u I' in J_{r,r+s} for I in J_{r-1,r}, I' in J_{r,s}", 0, {}};
  CheckReport mono{"T_{r-1,s} <= T_{r,s}", 0, {}};
  CheckReport product{"(1/sigma_r) T_{r-1,r} T_{r,s} <= T_{r,r+s}", 0, {}};

  for (int s = 1; s <= size_max; ++s) {
    for (int r = 1; r <= s && r + s <= size_max; ++r) {
      jset_for_each(r - 1, s, [&](const IndexSet& I) {
        ++nest.checks;
        if (!jset_contains(r, s, I))
          nest.counterexamples.push_back("r=" + std::to_string(r) + " s=" + std::to_string(s) +
                                         " " + I.str());
      });

      const auto Jprev = jset_enumerate(r - 1, r);
      const auto Jcur = jset_enumerate(r, s);
      for (const auto& I : Jprev)
        for (const auto& Ip : Jcur) {
          ++closure.checks;
          const IndexSet U = I.united(Ip).with(r);
          if (!jset_contains(r, r + s, U))
            closure.counterexamples.push_back("r=" + std::to_string(r) + " s=" +
                                              std::to_string(s) + " " + U.str());
        }

      ++mono.checks;
      const double t_prev = t_exact(r - 1, s, sigma);
      const double t_cur = t_exact(r, s, sigma);
      if (!(t_prev <= t_cur))
        mono.counterexamples.push_back("r=" + std::to_string(r) + " s=" + std::to_string(s));

      // The union of the two maximizers lies in J_{r,r+s}; its product, taken
      // in the same canonical order as every T value, must not exceed the max.
      ++product.checks;
      const TExact a = t_exact_with_argmax(r - 1, r, sigma);
      const TExact b = t_exact_with_argmax(r, s, sigma);
      const IndexSet U = a.argmax.united(b.argmax).with(r);
      const TExact c = t_exact_with_argmax(r, r + s, sigma);
      const double lhs_float = (1.0 / sigma[static_cast<std::size_t>(r)]) * a.value * b.value;
      if (!jset_contains(r, r + s, U) || !(U.divisor_product(sigma) <= c.value) ||
          lhs_float > c.value * (1.0 + 1e-12))
        product.counterexamples.push_back("r=" + std::to_string(r) + " s=" + std::to_string(s));
    }
  }
  out.push_back(nest);
  out.push_back(closure);
  out.push_back(mono);
  out.push_back(product);
  return out;
}

}  // namespace siegel
