#include "siegel/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "siegel/bounds.hpp"
#include "siegel/divisors.hpp"
#include "siegel/errors.hpp"
#include "siegel/koenigs.hpp"
#include "siegel/normalizer.hpp"
#include "siegel/textio.hpp"
#include "siegel/verify.hpp"

namespace siegel::cli {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value, std::size_t line) {
  std::istringstream ss(value);
  T x{};
  std::string extra;
  if (!(ss >> x) || (ss >> extra)) throw ParseError("bad value for '" + key + "'", line);
  return x;
}

std::ofstream open_out(const fs::path& p) {
  fs::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) throw std::ios_base::failure("cannot write " + p.string());
  return f;
}

/// "[N=15,R_max=1023]"
struct Tag {
  int N;
  int R;
  std::string str() const {
    return "[N=" + std::to_string(N) + ",R_max=" + std::to_string(R) + "]";
  }
};

void line(std::ostream& os, const Tag& t, const std::string& key, double value) {
  os << key << t.str() << " = " << format_double(value) << '\n';
}

void line(std::ostream& os, const Tag& t, const std::string& key, const std::string& value) {
  os << key << t.str() << " = " << value << '\n';
}

int table_size(const RunConfig& cfg) { return std::max(cfg.rmax, cfg.order); }

std::optional<DiophantineFloor> floor_of(const RunConfig& cfg) {
  if (!cfg.dio_c) return std::nullopt;
  return DiophantineFloor{*cfg.dio_c, cfg.dio_tau};
}

void validate(const RunConfig& cfg) {
  if (cfg.order < 1) throw std::invalid_argument("order must be >= 1");
  if (cfg.rmax < 1) throw std::invalid_argument("rmax must be >= 1");
  if (cfg.rho && !(*cfg.rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (cfg.delta && !(*cfg.delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (cfg.map.vars() == 0) throw std::invalid_argument("configuration has no [map] section");
}

struct Run {
  NormalFormResult result;
  DivisorTable table;
  BoundLedger ledger;
};

Run compute(const RunConfig& cfg) {
  Run run;
  run.result = normalize(cfg.map, cfg.order, cfg.eps_res);
  run.table = DivisorTable::build(cfg.map.spectrum, table_size(cfg), floor_of(cfg), cfg.eps_res);
  run.ledger = make_bound_ledger(fit_hypothesis(run.result.norm_W[0]), run.table, cfg.order);
  return run;
}

/// Number of computed norms exceeding their iteration bounds.
int audit_violations(const Run& run, int N) {
  int bad = 0;
  for (int r = 0; r <= N; ++r) {
    for (int s = 1; s <= N; ++s) {
      const auto b = iteration_bounds(run.ledger, run.table, r, s);
      const auto ru = static_cast<std::size_t>(r);
      const auto su = static_cast<std::size_t>(s);
      if (s == r && r >= 1 && run.result.norm_X[ru] > b.bound_X) ++bad;
      if (s > r && run.result.norm_W[ru][su] > b.bound_W) ++bad;
    }
  }
  return bad;
}

struct Radii {
  double rho;
  double delta;
};

/// rho defaults to 0.9 rho_bar and delta to rho_bar / 3 (or rho / 3 if that
/// would violate delta < rho / 2).
Radii choose_radii(const RunConfig& cfg, const BoundLedger& ledger) {
  const double rb = ledger.radius_available ? ledger.radius.rho_bar
                                            : std::numeric_limits<double>::quiet_NaN();
  const bool finite = std::isfinite(rb);
  Radii out{};
  out.rho = cfg.rho ? *cfg.rho : (finite ? 0.9 * rb : 1.0);
  if (cfg.delta) {
    out.delta = *cfg.delta;
  } else {
    out.delta = finite ? rb / 3.0 : out.rho / 3.0;
    if (!(out.delta < 0.5 * out.rho)) out.delta = out.rho / 3.0;
  }
  return out;
}

}  // namespace

RunConfig parse_config(std::istream& is) {
  RunConfig cfg;
  std::string raw;
  std::size_t ln = 0;
  bool have_map = false;
  while (std::getline(is, raw)) {
    ++ln;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (s == "[map]") {
      std::stringstream rest;
      for (std::size_t i = 0; i < ln; ++i) rest << "#\n";
      rest << is.rdbuf();
      cfg.map = read_map(rest);
      have_map = true;
      break;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", ln);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key == "order") cfg.order = parse_number<int>(key, value, ln);
    else if (key == "rmax") cfg.rmax = parse_number<int>(key, value, ln);
    else if (key == "rho") cfg.rho = parse_number<double>(key, value, ln);
    else if (key == "delta") cfg.delta = parse_number<double>(key, value, ln);
    else if (key == "eps_res") cfg.eps_res = parse_number<double>(key, value, ln);
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value, ln);
    else if (key == "dio_c") cfg.dio_c = parse_number<double>(key, value, ln);
    else if (key == "dio_tau") cfg.dio_tau = parse_number<double>(key, value, ln);
    else if (key == "out") cfg.out = value;
    else throw ParseError("unknown key '" + key + "'", ln);
  }
  if (!have_map) throw ParseError("missing [map] section", ln);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::ios_base::failure("cannot open " + path);
  RunConfig cfg = parse_config(f);
  cfg.input = path;
  return cfg;
}

int cmd_normalize(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const int N = cfg.order;
  const Run run = compute(cfg);
  const Tag tag{N, run.table.R_max};
  const fs::path dir(cfg.out);

  {
    auto f = open_out(dir / "map.txt");
    write_map(f, cfg.map);
  }
  for (int r = 1; r <= N; ++r) {
    auto f = open_out(dir / "generators" / ("X_" + std::to_string(r) + ".txt"));
    f << "# X_" << r << " order " << r << " N=" << N << '\n';
    write_field(f, run.result.X(r));
  }
  {
    auto f = open_out(dir / "transform.txt");
    f << "# y = x + psi(x), N=" << N << '\n';
    write_coordinate_map(f, run.result.transform);
  }
  {
    auto f = open_out(dir / "inverse_transform.txt");
    f << "# x as a series in y, N=" << N << '\n';
    write_coordinate_map(f, run.result.inverse_transform);
  }
  {
    auto f = open_out(dir / "ledger.csv");
    f << "N,R_max,r,s,norm_X,norm_W,bound_X,bound_W\n";
    for (int r = 0; r <= N; ++r) {
      for (int s = 1; s <= N; ++s) {
        const auto b = iteration_bounds(run.ledger, run.table, r, s);
        const auto ru = static_cast<std::size_t>(r);
        f << N << ',' << run.table.R_max << ',' << r << ',' << s << ','
          << format_double(s == r ? run.result.norm_X[ru] : 0.0) << ','
          << format_double(run.result.norm_W[ru][static_cast<std::size_t>(s)]) << ','
          << format_double(s == r ? b.bound_X : 0.0) << ',' << format_double(b.bound_W) << '\n';
      }
    }
  }
  const int bad = audit_violations(run, N);
  {
    auto f = open_out(dir / "normalize_summary.txt");
    f << "# normalize\n";
    line(f, tag, "input", cfg.input.empty() ? std::string("-") : cfg.input);
    line(f, tag, "dimension", static_cast<double>(cfg.map.vars()));
    line(f, tag, "eps_res", cfg.eps_res);
    line(f, tag, "fit.A", run.ledger.fit.A);
    line(f, tag, "fit.C0", run.ledger.fit.C0);
    for (int r = 1; r <= N; ++r) line(f, tag, "norm_X_" + std::to_string(r), run.result.norm_X[static_cast<std::size_t>(r)]);
    double ann = 0.0;
    for (double a : run.result.annihilation) ann = std::max(ann, a);
    line(f, tag, "max_annihilation_residual", ann);
    line(f, tag, "iteration_bound_violations", static_cast<double>(bad));
  }
  log << "normalize: archive written to " << dir.string() << " " << tag.str() << '\n';
  return kOk;
}

int cmd_divisors(const RunConfig& cfg, std::ostream& log) {
  if (cfg.rmax < 1) throw std::invalid_argument("rmax must be >= 1");
  const DivisorTable t = DivisorTable::build(cfg.map.spectrum, cfg.rmax, floor_of(cfg), cfg.eps_res);
  const Tag tag{cfg.order, t.R_max};
  const fs::path dir(cfg.out);
  {
    auto f = open_out(dir / "divisors.csv");
    f << "R_max,r,beta,alpha,sigma,gamma_partial\n";
    double g = 0.0;
    for (int r = 0; r <= t.R_max; ++r) {
      const auto ru = static_cast<std::size_t>(r);
      if (r >= 1) g -= std::log(t.alpha[ru]) / (static_cast<double>(r) * (r + 1.0));
      f << t.R_max << ',' << r << ',' << format_double(t.beta[ru]) << ','
        << format_double(t.alpha[ru]) << ',' << format_double(t.sigma[ru]) << ','
        << format_double(g) << '\n';
    }
  }
  constexpr int kLemmaSize = 12;
  const auto reports = verify_combinatorial_lemmas(kLemmaSize, t.sigma);
  bool all = true;
  {
    auto f = open_out(dir / "divisors_report.txt");
    f << "# divisors\n";
    line(f, tag, "gamma_partial", t.gamma.partial);
    line(f, tag, "gamma_tail", t.gamma.tail_available ? format_double(t.gamma.tail) : "unavailable");
    line(f, tag, "bruno_partial", t.bruno.partial);
    line(f, tag, "bruno_K", static_cast<double>(t.bruno.truncation));
    line(f, tag, "bruno_tail", t.bruno.tail_available ? format_double(t.bruno.tail) : "unavailable");
    line(f, tag, "lemma_size_max", static_cast<double>(kLemmaSize));
    for (const auto& r : reports) {
      all = all && r.passed();
      f << "lemma " << r.name << " checks=" << r.checks
        << " counterexamples=" << r.counterexamples.size() << (r.passed() ? " PASS" : " FAIL")
        << '\n';
      for (const auto& c : r.counterexamples) f << "  " << c << '\n';
    }
  }
  log << "divisors: Gamma" << tag.str() << " = " << format_double(t.gamma.partial)
      << ", Bruno" << tag.str() << " = " << format_double(t.bruno.partial) << '\n';
  return all ? kOk : kCertificateFailed;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const int N = cfg.order;
  const Run run = compute(cfg);
  const Tag tag{N, run.table.R_max};
  const RadiusBound rb = radius_lower_bound(run.table, run.ledger);
  BoundLedger ledger = run.ledger;
  ledger.radius = rb;
  ledger.radius_available = true;
  const Radii rd = choose_radii(cfg, ledger);
  if (!(rd.delta > 0.0 && rd.delta < 0.5 * rd.rho))
    throw std::invalid_argument("need 0 < delta < rho/2");

  const auto sup = generator_sup_bounds(run.result.generators, rd.rho);
  double tail = 0.0;
  if (std::isfinite(rb.rho_bar)) {
    const double q = rb.eta * std::exp(rb.Gamma) * rd.rho;
    tail = q < 1.0 ? rd.rho * rb.K * std::pow(q, N + 1) / ((N + 1.0) * (1.0 - q))
                   : std::numeric_limits<double>::infinity();
  }
  const auto cert = composed_series_certificate(sup, rd.rho, rd.delta, tail);
  const auto ex = explie_domain_check(run.result.generators, rd.rho, std::min(rd.delta, 0.5 * rd.rho));
  const int bad = audit_violations(run, N);
  const auto& a = accumulation_constant();

  const fs::path dir(cfg.out);
  auto f = open_out(dir / "certificate.txt");
  f << "# bounds certificate\n";
  line(f, tag, "fit.A", ledger.fit.A);
  line(f, tag, "fit.C0", ledger.fit.C0);
  for (int r = 0; r <= ledger.C.r_max(); ++r) line(f, tag, "C_" + std::to_string(r), ledger.C[r]);
  line(f, tag, "C_inf_upper", ledger.C.limit_upper);
  line(f, tag, "a_partial", a.partial);
  line(f, tag, "a_tail", a.tail);
  line(f, tag, "gamma_const", ledger.gamma_const);
  line(f, tag, "Gamma_partial", run.table.gamma.partial);
  line(f, tag, "Gamma_tail", run.table.gamma.tail);
  line(f, tag, "Gamma_upper", run.table.gamma.upper());
  line(f, tag, "eta", rb.eta);
  line(f, tag, "K", rb.K);
  line(f, tag, "x_star", rb.x_star);
  line(f, tag, "B_explicit", rb.B_explicit);
  line(f, tag, "rho_bar", rb.rho_bar);
  line(f, tag, "log_rho_bar", rb.log_rho_bar);
  line(f, tag, "delta_default", rb.delta);
  line(f, tag, "rho", rd.rho);
  line(f, tag, "delta", rd.delta);
  line(f, tag, "iteration_bound_violations", static_cast<double>(bad));
  for (std::size_t i = 0; i < sup.size(); ++i) {
    line(f, tag, "sup_X_" + std::to_string(i + 1), sup[i]);
    line(f, tag, "delta_split_" + std::to_string(i + 1), cert.delta_split[i]);
  }
  line(f, tag, "series_tail", tail);
  line(f, tag, "series_sum", cert.sum);
  line(f, tag, "series_threshold", cert.threshold);
  line(f, tag, "inner_radius", cert.inner_radius);
  line(f, tag, "middle_radius", cert.middle_radius);
  line(f, tag, "flow_field_sup", ex.field_sup);
  line(f, tag, "flow_threshold", ex.threshold);
  line(f, tag, "flow_check", ex.passed ? "PASS" : "FAIL");
  const bool ok = cert.passed && bad == 0;
  line(f, tag, "verdict", ok ? "PASS" : "FAIL");
  log << "bounds: rho_bar" << tag.str() << " = " << format_double(rb.rho_bar) << ", certificate "
      << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kCertificateFailed;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const int N = cfg.order;
  const Run run = compute(cfg);
  const Tag tag{N, run.table.R_max};
  const fs::path dir(cfg.out);

  ResidualOptions opt;
  opt.seed = cfg.seed;
  if (cfg.rho) {
    opt.rho = *cfg.rho;
  } else if (run.ledger.radius_available && std::isfinite(run.ledger.radius.rho_bar)) {
    opt.rho = 0.5 * run.ledger.radius.rho_bar;
  } else {
    opt.rho = 0.1;
  }
  const ResidualReport rep = conjugacy_residual(cfg.map, run.result, opt);
  constexpr double kResidualTolerance = 1e-10;
  const bool residual_ok = rep.max_graded <= kResidualTolerance * rep.ledger_scale;

  {
    auto f = open_out(dir / "residuals.csv");
    f << "N,R_max,s,graded_residual\n";
    for (int s = 0; s <= N; ++s)
      f << N << ',' << run.table.R_max << ',' << s << ','
        << format_double(rep.graded[static_cast<std::size_t>(s)]) << '\n';
  }
  {
    auto f = open_out(dir / "pointwise_residuals.csv");
    f << "N,rho,sample,residual\n";
    for (std::size_t i = 0; i < rep.pointwise.size(); ++i)
      f << N << ',' << format_double(rep.rho) << ',' << i << ',' << format_double(rep.pointwise[i]) << '\n';
  }

  auto f = open_out(dir / "verify_report.txt");
  f << "# verify\n";
  const fs::path archive = dir / "transform.txt";
  if (fs::exists(archive)) {
    std::ifstream in(archive);
    const CoordinateMap stored = read_coordinate_map(in, cfg.map.vars(), N);
    double diff = 0.0;
    for (std::size_t j = 0; j < cfg.map.vars(); ++j)
      for (int s = 0; s <= N; ++s)
        diff = std::max(diff, poly_norm(stored[j][s] - run.result.transform[j][s]));
    line(f, tag, "archive", archive.filename().string());
    line(f, tag, "archive_max_difference", diff);
  } else {
    line(f, tag, "archive", "none");
  }
  line(f, tag, "seed", std::to_string(rep.seed));
  line(f, tag, "samples", static_cast<double>(rep.pointwise.size()));
  line(f, tag, "sample_rho", rep.rho);
  line(f, tag, "max_graded_residual", rep.max_graded);
  line(f, tag, "ledger_scale", rep.ledger_scale);
  line(f, tag, "max_pointwise_residual", rep.max_pointwise);
  line(f, tag, "max_relative_residual", rep.max_relative);
  line(f, tag, "graded_check", residual_ok ? "PASS" : "FAIL");

  bool radius_ok = true;
  try {
    const RadiusEstimate est = root_test_radius(run.result.transform);
    line(f, tag, "root_test_radius", est.radius);
    line(f, tag, "root_test_uncertainty", est.uncertainty);
    if (run.ledger.radius_available) {
      line(f, tag, "rho_bar", run.ledger.radius.rho_bar);
      radius_ok = est.radius >= run.ledger.radius.rho_bar;
      line(f, tag, "radius_consistency", radius_ok ? "PASS" : "FAIL");
    }
  } catch (const InsufficientData& e) {
    line(f, tag, "root_test_radius", std::string("unavailable (") + e.what() + ")");
  }

  if (cfg.map.vars() == 1) {
    std::vector<std::complex<double>> coeffs;
    for (int s = 1; s <= cfg.map.truncation() && s <= N; ++s)
      coeffs.push_back(to_std(cfg.map.v(s)[0].coeff(MultiIndex({s + 1}))));
    const auto a = koenigs_oracle(to_std(cfg.map.spectrum.lambda(0)), coeffs, N, cfg.eps_res);
    double rel = 0.0;
    for (int s = 0; s <= N; ++s) {
      const auto c = to_std(run.result.transform[0][s].coeff(MultiIndex({s + 1})));
      const auto o = a[static_cast<std::size_t>(s) + 1];
      rel = std::max(rel, std::abs(c - o) / std::max(1.0, std::abs(o)));
    }
    line(f, tag, "koenigs_max_relative_difference", rel);
  }
  const bool ok = residual_ok && radius_ok;
  line(f, tag, "verdict", ok ? "PASS" : "FAIL");
  log << "verify: max graded residual" << tag.str() << " = " << format_double(rep.max_graded)
      << ", " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kCertificateFailed;
}

int cmd_report(const std::string& dir, std::ostream& log) {
  const fs::path root(dir);
  if (!fs::is_directory(root)) throw std::ios_base::failure("no run directory " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file() && e.path().filename() != "report.txt") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  auto out = open_out(root / "report.txt");
  out << "# run report for " << root.string() << '\n';
  for (const auto& p : files) {
    out << "\n== " << fs::relative(p, root).string() << " ==\n";
    std::ifstream in(p);
    out << in.rdbuf();
  }
  log << "report: " << files.size() << " artifacts bundled into " << (root / "report.txt").string()
      << '\n';
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lie-transform linearization of maps near a fixed point"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<int> order, rmax;
  std::optional<double> rho, delta, eps_res;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "run configuration file")->required();
    sub->add_option("--order", order, "truncation order N");
    sub->add_option("--rmax", rmax, "divisor table size R_max");
    sub->add_option("--rho", rho, "polydisk radius");
    sub->add_option("--delta", delta, "domain restriction");
    sub->add_option("--eps-res", eps_res, "resonance threshold");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "sampling seed");
  };
  auto* normalize_cmd = app.add_subcommand("normalize", "compute generators and coordinate change");
  auto* divisors_cmd = app.add_subcommand("divisors", "small-divisor table and lemma audit");
  auto* bounds_cmd = app.add_subcommand("bounds", "constant chain and radius certificate");
  auto* verify_cmd = app.add_subcommand("verify", "residuals and independent oracles");
  for (auto* s : {normalize_cmd, divisors_cmd, bounds_cmd, verify_cmd}) add_common(s);
  auto* report_cmd = app.add_subcommand("report", "bundle a run directory");
  std::string report_dir = "run";
  report_cmd->add_option("dir", report_dir, "run directory");
  report_cmd->add_option("--out", out_dir, "run directory");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (report_cmd->parsed()) return cmd_report(out_dir ? *out_dir : report_dir, out);

    if (!fs::exists(config_path)) {
      err << "error: cannot open " << config_path << '\n';
      return kIoError;
    }
    RunConfig cfg = load_config(config_path);
    if (order) cfg.order = *order;
    if (rmax) cfg.rmax = *rmax;
    if (rho) cfg.rho = *rho;
    if (delta) cfg.delta = *delta;
    if (eps_res) cfg.eps_res = *eps_res;
    if (out_dir) cfg.out = *out_dir;
    if (seed) cfg.seed = *seed;

    if (normalize_cmd->parsed()) { cfg.subcommand = "normalize"; return cmd_normalize(cfg, out); }
    if (divisors_cmd->parsed()) { cfg.subcommand = "divisors"; return cmd_divisors(cfg, out); }
    if (bounds_cmd->parsed()) { cfg.subcommand = "bounds"; return cmd_bounds(cfg, out); }
    cfg.subcommand = "verify";
    return cmd_verify(cfg, out);
  } catch (const ResonantDivisor& e) {
    err << "error: " << e.what() << '\n';
    return kResonance;
  } catch (const RepresentationObstruction& e) {
    err << "error: " << e.what() << '\n';
    return kResonance;
  } catch (const NonResonanceViolated& e) {
    err << "error: " << e.what() << '\n';
    return kResonance;
  } catch (const EnumerationTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kEnumerationTooLarge;
  } catch (const GammaDiverged& e) {
    err << "error: " << e.what() << '\n';
    return kCertificateFailed;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace siegel::cli
