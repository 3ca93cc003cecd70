#include "siegel/normalizer.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "siegel/errors.hpp"

namespace siegel {

StageResult normalize_step(const GeneratingSequence& W_prev, int r, const Spectrum& spec,
                           double eps_res) {
  const int N = W_prev.truncation();
  const std::size_t n = W_prev.vars();
  if (r < 1 || r > N) throw std::out_of_range("normalize_step: stage outside 1..N");
  for (int s = 1; s < r; ++s)
    if (!W_prev[s].is_zero())
      throw std::invalid_argument("normalize_step: slot " + std::to_string(s) +
                                  " must already be normalized");

  StageResult out;
  out.X = solve_homological(spec, W_prev[r], eps_res);
  if (out.X.is_zero()) {
    out.W = W_prev;
    return out;
  }
  const HomVectorField RX = r_apply(spec, out.X);

  // V_r = W_r - R X_r; V_s = W_s - (r/s) E_{s-r}(R X_r), E built from W_prev.
  std::vector<HomVectorField> V(static_cast<std::size_t>(N) + 1);
  V[static_cast<std::size_t>(r)] = W_prev[r] - RX;
  const auto E = lie_transform_E_all(W_prev, RX, N - r);
  for (int s = r + 1; s <= N; ++s) {
    HomVectorField v = W_prev[s];
    v.add_scaled(E[static_cast<std::size_t>(s - r)], -Real(r) / s);
    V[static_cast<std::size_t>(s)] = std::move(v);
  }

  out.W = GeneratingSequence(n, N);
  HomVectorField Wr = V[static_cast<std::size_t>(r)] + out.X;
  out.annihilation = vf_norm(Wr);
  const double scale = std::max(vf_norm(W_prev[r]), vf_norm(out.X));
  if (out.annihilation > kAnnihilationTolerance * scale)
    throw std::logic_error("normalize_step: stage " + std::to_string(r) +
                           " failed to annihilate W_r (relative residual " +
                           std::to_string(out.annihilation / scale) + ")");

  // W_s = V_s + (1/s) sum_{k=1}^{floor(s/r)-1} ((s-kr)/k!) L_X^k V_{s-kr}
  for (int s = r + 1; s <= N; ++s) {
    HomVectorField w = V[static_cast<std::size_t>(s)];
    const int kmax = s / r - 1;
    for (int k = 1; k <= kmax; ++k) {
      HomVectorField term = V[static_cast<std::size_t>(s - k * r)];
      Real fact = 1;
      for (int i = 1; i <= k; ++i) {
        term = lie_derivative(out.X, term);
        fact *= i;
      }
      w.add_scaled(term, Real(s - k * r) / (s * fact));
    }
    out.W.set(s, std::move(w));
  }
  return out;
}

LieSeriesChain NormalFormResult::chain(int upto_r) const {
  std::vector<HomVectorField> fields(generators.begin(),
                                     generators.begin() + std::min<std::ptrdiff_t>(
                                                              upto_r, static_cast<std::ptrdiff_t>(
                                                                          generators.size())));
  return LieSeriesChain(spectrum.size(), std::move(fields));
}

NormalFormResult normalize(const AnalyticMap& map, int N, double eps_res) {
  if (N < 1) throw std::invalid_argument("normalize: order must be >= 1");
  const std::size_t n = map.vars();

  // Pad or cut the map to exactly N orders.
  std::vector<HomVectorField> v;
  for (int s = 1; s <= N; ++s)
    v.push_back(s <= map.truncation() ? map.v(s) : HomVectorField(n, s));
  const AnalyticMap F(map.spectrum, std::move(v));

  NormalFormResult res;
  res.spectrum = map.spectrum;
  res.order = N;
  res.initial = map_to_generating_sequence(F, eps_res).W;
  res.norm_X.assign(static_cast<std::size_t>(N) + 1, 0.0);
  res.annihilation.assign(static_cast<std::size_t>(N) + 1, 0.0);
  res.norm_W.assign(static_cast<std::size_t>(N) + 1,
                    std::vector<double>(static_cast<std::size_t>(N) + 1, 0.0));

  GeneratingSequence W = res.initial;
  for (int s = 1; s <= N; ++s) res.norm_W[0][static_cast<std::size_t>(s)] = vf_norm(W[s]);
  for (int r = 1; r <= N; ++r) {
    StageResult st;
    try {
      st = normalize_step(W, r, map.spectrum, eps_res);
    } catch (const ResonantDivisor& e) {
      throw e.at_stage(r);
    }
    res.norm_X[static_cast<std::size_t>(r)] = vf_norm(st.X);
    res.annihilation[static_cast<std::size_t>(r)] = st.annihilation;
    res.generators.push_back(std::move(st.X));
    W = std::move(st.W);
    for (int s = 1; s <= N; ++s) res.norm_W[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = vf_norm(W[s]);
  }

  const LieSeriesChain S = res.chain();
  const CoordinateMap id = CoordinateMap::identity(n, N);
  res.transform = S.apply_inverse(id, N);
  res.inverse_transform = S.apply(id, N);
  return res;
}

CoordinateMap partial_transform(const NormalFormResult& result, int upto_r, int max_order) {
  return result.chain(upto_r).apply_inverse(
      CoordinateMap::identity(result.spectrum.size(), max_order), max_order);
}

Point transform_coordinates(const NormalFormResult& result, Direction dir,
                            std::span<const Complex> x) {
  return dir == Direction::forward ? result.transform(x) : result.inverse_transform(x);
}

CoordinateMap transform_coordinates(const NormalFormResult& result, Direction dir,
                                    const CoordinateMap& series) {
  const LieSeriesChain S = result.chain();
  const int N = series.max_order();
  return dir == Direction::forward ? S.apply_inverse(series, N) : S.apply(series, N);
}

}  // namespace siegel
