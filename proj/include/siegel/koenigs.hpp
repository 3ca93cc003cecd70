#ifndef SIEGEL_KOENIGS_HPP
#define SIEGEL_KOENIGS_HPP

// One-dimensional Schroeder equation sigma(F(x)) = lambda sigma(x) solved
// coefficient by coefficient.  Self-contained: shares no code with the Lie
// machinery so it can serve as an independent oracle.

#include <complex>
#include <span>
#include <vector>

namespace siegel {

/// F(x) = lambda x + sum_{d=2}^{N+1} f_d x^d with coeffs[d - 2] = f_d (missing
/// entries are zero).  Returns a_0..a_{N+1} of sigma(x) = x + sum a_d x^d,
/// a_0 = 0 and a_1 = 1.  Throws ResonantDivisor when |lambda - lambda^d| <= eps.
std::vector<std::complex<double>> koenigs_oracle(std::complex<double> lambda,
                                                 std::span<const std::complex<double>> coeffs,
                                                 int N, double eps = 1e-14);

}  // namespace siegel

#endif  // SIEGEL_KOENIGS_HPP
