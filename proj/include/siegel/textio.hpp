#ifndef SIEGEL_TEXTIO_HPP
#define SIEGEL_TEXTIO_HPP

// Canonical text form shared by every file the library reads or writes.
//
// A polynomial is a list of rows `coeff_re coeff_im k1 ... kn`, one per
// monomial, sorted in graded-lex order.  Graded vector objects (fields, maps,
// coordinate transformations) are split into blocks headed by
// `order <s> component <j>` (j is 1-based) holding the rows of that part.
// Lines starting with '#' and blank lines are ignored by all readers.

#include <iosfwd>
#include <string>
#include <vector>

#include "siegel/algebra.hpp"

namespace siegel {

class Spectrum;
struct AnalyticMap;

void write_poly(std::ostream& os, const HomPoly& f);
/// Parses rows until end of input; all rows must have degree `degree`.
HomPoly read_poly(std::istream& is, std::size_t n, int degree);

void write_field(std::ostream& os, const HomVectorField& X);
HomVectorField read_field(std::istream& is, std::size_t n, int order);

void write_coordinate_map(std::ostream& os, const CoordinateMap& F);
CoordinateMap read_coordinate_map(std::istream& is, std::size_t n, int max_order);

/// Map file: header `n N`, spectrum line `mu_1 omega_1 ... mu_n omega_n`,
/// then `order s component j` blocks holding v_s.
void write_map(std::ostream& os, const AnalyticMap& map);
AnalyticMap read_map(std::istream& is);
AnalyticMap read_map_file(const std::string& path);

/// Round-trip-exact decimal formatting of a double.
std::string format_double(double x);

}  // namespace siegel

#endif  // SIEGEL_TEXTIO_HPP
