#include "siegel/koenigs.hpp"

#include <cmath>
#include <stdexcept>

#include "siegel/errors.hpp"

namespace siegel {

namespace {

using C = std::complex<double>;

std::vector<C> truncated_mul(const std::vector<C>& a, const std::vector<C>& b, std::size_t top) {
  std::vector<C> out(top + 1, C{});
  for (std::size_t i = 0; i < a.size() && i <= top; ++i) {
    if (a[i] == C{}) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= top; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

std::vector<C> koenigs_oracle(C lambda, std::span<const C> coeffs, int N, double eps) {
  if (N < 0) throw std::invalid_argument("koenigs_oracle: negative order");
  const std::size_t top = static_cast<std::size_t>(N) + 1;

  std::vector<C> F(top + 1, C{});
  F[1] = lambda;
  for (std::size_t i = 0; i < coeffs.size() && i + 2 <= top; ++i) F[i + 2] = coeffs[i];

  // powers[j][d] = [x^d] F^j
  std::vector<std::vector<C>> powers(top + 1);
  powers[0].assign(top + 1, C{});
  powers[0][0] = 1.0;
  for (std::size_t j = 1; j <= top; ++j) powers[j] = truncated_mul(powers[j - 1], F, top);

  std::vector<C> a(top + 1, C{});
  a[1] = 1.0;
  C lambda_d = lambda;
  for (std::size_t d = 2; d <= top; ++d) {
    lambda_d *= lambda;
    C rhs{};
    for (std::size_t j = 1; j < d; ++j) rhs += a[j] * powers[j][d];
    const C div = lambda - lambda_d;
    if (std::abs(div) <= eps)
      throw ResonantDivisor({static_cast<int>(d)}, 0, lambda_d / lambda - 1.0);
    a[d] = rhs / div;
  }
  return a;
}

}  // namespace siegel
