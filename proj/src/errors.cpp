#include "siegel/errors.hpp"

#include <sstream>

namespace siegel {

std::string format_exponents(const std::vector<int>& k) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
  os << ')';
  return os.str();
}

namespace {

std::string resonant_message(const std::vector<int>& k, std::size_t j, std::complex<double> v,
                             int stage) {
  std::ostringstream os;
  os << "resonant divisor at k=" << format_exponents(k);
  if (k.size() == 1) os << " (k=" << k[0] << ")";
  os << ", component j=" << j + 1 << ", |divisor|=" << std::abs(v);
  if (stage >= 0) os << ", stage r=" << stage;
  return os.str();
}

}  // namespace

ResonantDivisor::ResonantDivisor(std::vector<int> k, std::size_t component,
                                 std::complex<double> value, int stage)
    : Error(resonant_message(k, component, value, stage)),
      k_(std::move(k)),
      j_(component),
      value_(value),
      stage_(stage) {}

RepresentationObstruction::RepresentationObstruction(int order, std::vector<int> k,
                                                     std::size_t component)
    : Error("map representation obstructed at order " + std::to_string(order) + ", k=" +
            format_exponents(k) + ", component j=" + std::to_string(component + 1)),
      order_(order),
      k_(std::move(k)),
      j_(component) {}

NonResonanceViolated::NonResonanceViolated(int r, double beta)
    : Error("non-resonance violated: beta_" + std::to_string(r) + " = " + std::to_string(beta)),
      r_(r),
      beta_(beta) {}

}  // namespace siegel
