#ifndef SIEGEL_ERRORS_HPP
#define SIEGEL_ERRORS_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A divisor of the homological operator fell below the resonance threshold.
class ResonantDivisor : public Error {
 public:
  ResonantDivisor(std::vector<int> k, std::size_t component, std::complex<double> value,
                  int stage = -1);

  const std::vector<int>& exponents() const noexcept { return k_; }
  /// Zero-based component index.
  std::size_t component() const noexcept { return j_; }
  std::complex<double> value() const noexcept { return value_; }
  /// Normalization stage r, or -1 when raised outside the normalizer.
  int stage() const noexcept { return stage_; }
  ResonantDivisor at_stage(int r) const { return ResonantDivisor(k_, j_, value_, r); }

 private:
  std::vector<int> k_;
  std::size_t j_;
  std::complex<double> value_;
  int stage_;
};

/// The generating sequence of a map cannot be extracted at some monomial.
class RepresentationObstruction : public Error {
 public:
  RepresentationObstruction(int order, std::vector<int> k, std::size_t component);
  int order() const noexcept { return order_; }
  const std::vector<int>& exponents() const noexcept { return k_; }
  std::size_t component() const noexcept { return j_; }

 private:
  int order_;
  std::vector<int> k_;
  std::size_t j_;
};

class NonResonanceViolated : public Error {
 public:
  NonResonanceViolated(int r, double beta);
  int order() const noexcept { return r_; }
  double beta() const noexcept { return beta_; }

 private:
  int r_;
  double beta_;
};

class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

class GammaDiverged : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

std::string format_exponents(const std::vector<int>& k);

}  // namespace siegel

#endif  // SIEGEL_ERRORS_HPP
