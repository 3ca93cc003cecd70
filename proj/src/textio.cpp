#include "siegel/textio.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "siegel/errors.hpp"
#include "siegel/maps.hpp"

namespace siegel {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_rows(std::ostream& os, const HomPoly& f) {
  for (const auto& [k, c] : f.terms()) {
    os << format_double(to_double(c.real())) << ' ' << format_double(to_double(c.imag()));
    for (std::size_t i = 0; i < k.size(); ++i) os << ' ' << k[i];
    os << '\n';
  }
}

// Line source skipping comments and blank lines, tracking line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  bool next(std::string& line) {
    if (pushed_) {
      line = std::move(pending_);
      pushed_ = false;
      return true;
    }
    std::string raw;
    while (std::getline(is_, raw)) {
      ++line_;
      const auto first = raw.find_first_not_of(" \t\r");
      if (first == std::string::npos || raw[first] == '#') continue;
      const auto last = raw.find_last_not_of(" \t\r");
      line = raw.substr(first, last - first + 1);
      return true;
    }
    return false;
  }
  void push_back(std::string line) {
    pending_ = std::move(line);
    pushed_ = true;
  }
  std::size_t line_number() const noexcept { return line_; }

 private:
  std::istream& is_;
  std::size_t line_ = 0;
  std::string pending_;
  bool pushed_ = false;
};

bool is_block_header(const std::string& line) { return line.rfind("order", 0) == 0; }

struct BlockHeader {
  int order;
  std::size_t component;  // 0-based
};

BlockHeader parse_header(const std::string& line, std::size_t n, std::size_t lineno) {
  std::istringstream ss(line);
  std::string w1, w2;
  long s = 0, j = 0;
  if (!(ss >> w1 >> s >> w2 >> j) || w1 != "order" || w2 != "component")
    throw ParseError("expected 'order <s> component <j>'", lineno);
  std::string extra;
  if (ss >> extra) throw ParseError("trailing tokens after block header", lineno);
  if (s < 0) throw ParseError("negative order", lineno);
  if (j < 1 || static_cast<std::size_t>(j) > n)
    throw ParseError("component index out of range", lineno);
  return {static_cast<int>(s), static_cast<std::size_t>(j - 1)};
}

void parse_row(const std::string& line, std::size_t n, int degree, std::size_t lineno,
               HomPoly& into) {
  std::istringstream ss(line);
  double re = 0.0, im = 0.0;
  if (!(ss >> re >> im)) throw ParseError("expected 'coeff_re coeff_im k1 ... kn'", lineno);
  std::vector<int> k(n);
  for (std::size_t i = 0; i < n; ++i) {
    long e = 0;
    if (!(ss >> e)) throw ParseError("missing exponent", lineno);
    if (e < 0) throw ParseError("negative exponent", lineno);
    k[i] = static_cast<int>(e);
  }
  std::string extra;
  if (ss >> extra) throw ParseError("too many exponents", lineno);
  MultiIndex mi(std::move(k));
  if (mi.degree() != degree)
    throw ParseError("monomial of degree " + std::to_string(mi.degree()) + " where degree " +
                         std::to_string(degree) + " is expected",
                     lineno);
  into.add_term(mi, Complex(re, im));
}

// Reads `order s component j` blocks until EOF.  `sink(order, j, row-line, lineno)`.
template <class Sink>
void read_blocks(LineReader& in, std::size_t n, Sink&& sink) {
  std::string line;
  bool have_block = false;
  BlockHeader h{};
  while (in.next(line)) {
    if (is_block_header(line)) {
      h = parse_header(line, n, in.line_number());
      have_block = true;
      continue;
    }
    if (!have_block) throw ParseError("coefficient row outside a block", in.line_number());
    sink(h, line, in.line_number());
  }
}

}  // namespace

void write_poly(std::ostream& os, const HomPoly& f) { write_rows(os, f); }

HomPoly read_poly(std::istream& is, std::size_t n, int degree) {
  LineReader in(is);
  HomPoly f(n, degree);
  std::string line;
  while (in.next(line)) parse_row(line, n, degree, in.line_number(), f);
  return f;
}

void write_field(std::ostream& os, const HomVectorField& X) {
  for (std::size_t j = 0; j < X.vars(); ++j) {
    os << "order " << X.order() << " component " << j + 1 << '\n';
    write_rows(os, X[j]);
  }
}

HomVectorField read_field(std::istream& is, std::size_t n, int order) {
  LineReader in(is);
  HomVectorField X(n, order);
  std::vector<HomPoly> comps(n, HomPoly(n, order + 1));
  read_blocks(in, n, [&](const BlockHeader& h, const std::string& line, std::size_t ln) {
    if (h.order != order) throw ParseError("block order differs from the field order", ln);
    parse_row(line, n, order + 1, ln, comps[h.component]);
  });
  for (std::size_t j = 0; j < n; ++j) X.set_component(j, std::move(comps[j]));
  return X;
}

void write_coordinate_map(std::ostream& os, const CoordinateMap& F) {
  for (int o = 0; o <= F.max_order(); ++o) {
    for (std::size_t j = 0; j < F.vars(); ++j) {
      if (F[j][o].is_zero()) continue;
      os << "order " << o << " component " << j + 1 << '\n';
      write_rows(os, F[j][o]);
    }
  }
}

CoordinateMap read_coordinate_map(std::istream& is, std::size_t n, int max_order) {
  LineReader in(is);
  CoordinateMap F(n, max_order);
  read_blocks(in, n, [&](const BlockHeader& h, const std::string& line, std::size_t ln) {
    if (h.order > max_order) throw ParseError("block order above the truncation", ln);
    HomPoly row(n, h.order + 1);
    parse_row(line, n, h.order + 1, ln, row);
    F[h.component].add(row);
  });
  return F;
}

void write_map(std::ostream& os, const AnalyticMap& map) {
  os << map.vars() << ' ' << map.truncation() << '\n';
  for (std::size_t j = 0; j < map.vars(); ++j) {
    if (j) os << ' ';
    os << format_double(map.spectrum.mu()[j]) << ' ' << format_double(map.spectrum.omega()[j]);
  }
  os << '\n';
  for (int s = 1; s <= map.truncation(); ++s) {
    for (std::size_t j = 0; j < map.vars(); ++j) {
      if (map.v(s)[j].is_zero()) continue;
      os << "order " << s << " component " << j + 1 << '\n';
      write_rows(os, map.v(s)[j]);
    }
  }
}

AnalyticMap read_map(std::istream& is) {
  LineReader in(is);
  std::string line;
  if (!in.next(line)) throw ParseError("empty map description");
  long n = 0, N = 0;
  {
    std::istringstream ss(line);
    std::string extra;
    if (!(ss >> n >> N) || (ss >> extra)) throw ParseError("expected header 'n N'", in.line_number());
    if (n < 1) throw ParseError("dimension must be positive", in.line_number());
    if (N < 0) throw ParseError("truncation must be non-negative", in.line_number());
  }
  if (!in.next(line)) throw ParseError("missing spectrum line", in.line_number());
  std::vector<double> mu, omega;
  {
    std::istringstream ss(line);
    for (long j = 0; j < n; ++j) {
      double m = 0.0, w = 0.0;
      if (!(ss >> m >> w)) throw ParseError("expected 'mu_1 omega_1 ... mu_n omega_n'", in.line_number());
      mu.push_back(m);
      omega.push_back(w);
    }
    std::string extra;
    if (ss >> extra) throw ParseError("too many spectrum values", in.line_number());
  }
  const auto nn = static_cast<std::size_t>(n);
  std::vector<std::vector<HomPoly>> comps;
  for (long s = 1; s <= N; ++s) comps.emplace_back(nn, HomPoly(nn, static_cast<int>(s) + 1));
  read_blocks(in, nn, [&](const BlockHeader& h, const std::string& row, std::size_t ln) {
    if (h.order < 1 || h.order > N) throw ParseError("block order outside 1..N", ln);
    parse_row(row, nn, h.order + 1, ln, comps[static_cast<std::size_t>(h.order - 1)][h.component]);
  });
  std::vector<HomVectorField> v;
  for (auto& c : comps) v.emplace_back(std::move(c));
  return AnalyticMap(Spectrum(std::move(mu), std::move(omega)), std::move(v));
}

AnalyticMap read_map_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::ios_base::failure("cannot open " + path);
  return read_map(f);
}

}  // namespace siegel
