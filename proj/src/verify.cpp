#include "siegel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "siegel/errors.hpp"

namespace siegel {

namespace {

double inf_norm(std::span<const Complex> x) {
  double m = 0.0;
  for (const auto& c : x) m = std::max(m, magnitude(c));
  return m;
}

}  // namespace

std::vector<Point> sample_polydisk(std::size_t n, double rho, int count, std::uint64_t seed) {
  if (rho < 0.0) throw std::invalid_argument("sample_polydisk: negative radius");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    Point p(n);
    for (auto& c : p) {
      const double r = rho * std::sqrt(u(gen));
      c = from_std(std::polar(r, 2.0 * std::numbers::pi * u(gen)));
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

ResidualReport conjugacy_residual(const AnalyticMap& map, const NormalFormResult& result,
                                  const ResidualOptions& options) {
  const int N = result.order;
  const std::size_t n = result.spectrum.size();
  ResidualReport rep;
  rep.order = N;
  rep.upto = options.upto < 0 ? N : std::min(options.upto, N);
  rep.rho = options.rho;
  rep.seed = options.seed;
  for (const auto& row : result.norm_W)
    for (double w : row) rep.ledger_scale = std::max(rep.ledger_scale, w);

  const CoordinateMap Y = rep.upto == N ? result.transform : partial_transform(result, rep.upto, N);
  const CoordinateMap F = map.as_coordinate_map(N);
  const CoordinateMap YF = substitute(Y, F, N);
  const auto lam = result.spectrum.lambdas();

  rep.graded.assign(static_cast<std::size_t>(N) + 1, 0.0);
  for (int s = 0; s <= N; ++s) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      HomPoly d = YF[j][s];
      d.add_scaled(Y[j][s], -lam[j]);
      acc += poly_norm(d);
    }
    rep.graded[static_cast<std::size_t>(s)] = acc;
    rep.max_graded = std::max(rep.max_graded, acc);
  }

  if (options.rho > 0.0) {
    double scale = 0.0;
    for (const auto& x : sample_polydisk(n, options.rho, options.samples, options.seed)) {
      const Point fx = F(x);
      const Point yfx = Y(fx);
      Point ly = Y(x);
      for (std::size_t j = 0; j < n; ++j) ly[j] *= lam[j];
      Point diff(n);
      for (std::size_t j = 0; j < n; ++j) diff[j] = yfx[j] - ly[j];
      const double e = inf_norm(diff);
      rep.pointwise.push_back(e);
      rep.max_pointwise = std::max(rep.max_pointwise, e);
      scale = std::max(scale, inf_norm(ly));
    }
    rep.max_relative = scale > 0.0 ? rep.max_pointwise / scale : rep.max_pointwise;
  }
  return rep;
}

RadiusEstimate root_test_radius(std::span<const double> norms) {
  std::vector<int> nonzero;
  for (std::size_t s = 1; s < norms.size(); ++s)
    if (norms[s] > 0.0) nonzero.push_back(static_cast<int>(s));
  if (nonzero.size() < 5)
    throw InsufficientData("root_test_radius: " + std::to_string(nonzero.size()) +
                           " nonzero orders, need at least 5");
  const std::size_t m = nonzero.size();
  const std::size_t window = (m + 1) / 2;
  RadiusEstimate est;
  est.orders_used.assign(nonzero.end() - static_cast<std::ptrdiff_t>(window), nonzero.end());

  double mx = 0.0, my = 0.0;
  for (int s : est.orders_used) {
    mx += s;
    my += std::log(norms[static_cast<std::size_t>(s)]);
  }
  mx /= static_cast<double>(window);
  my /= static_cast<double>(window);
  double sxx = 0.0, sxy = 0.0;
  for (int s : est.orders_used) {
    const double dx = s - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(norms[static_cast<std::size_t>(s)]) - my);
  }
  est.slope = sxy / sxx;
  double sse = 0.0;
  for (int s : est.orders_used) {
    const double fit = my + est.slope * (s - mx);
    const double r = std::log(norms[static_cast<std::size_t>(s)]) - fit;
    sse += r * r;
  }
  const double se = window > 2 ? std::sqrt(sse / static_cast<double>(window - 2) / sxx) : 0.0;
  est.radius = std::exp(-est.slope);
  est.uncertainty = est.radius * se;
  return est;
}

RadiusEstimate root_test_radius(const CoordinateMap& transform) {
  std::vector<double> norms(static_cast<std::size_t>(std::max(transform.max_order(), 0)) + 1, 0.0);
  for (int s = 1; s <= transform.max_order(); ++s)
    for (std::size_t j = 0; j < transform.vars(); ++j)
      norms[static_cast<std::size_t>(s)] += poly_norm(transform[j][s]);
  return root_test_radius(norms);
}

double exchange_check(const GeneratingSequence& X, const HomPoly& f,
                      std::span<const Point> samples, int N) {
  const std::size_t n = X.vars();
  const CoordinateMap Tx = apply_transform(X, CoordinateMap::identity(n, N), N);
  FunctionSeries fs(n, N);
  if (f.order() <= N) fs.set(f.order(), f);
  const FunctionSeries Tf = apply_transform(X, fs, N);
  double worst = 0.0;
  for (const auto& x : samples) {
    const Point y = Tx(x);
    worst = std::max(worst, magnitude(f(y) - evaluate(Tf, x)));
  }
  return worst;
}

}  // namespace siegel
