#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "siegel/cli.hpp"
#include "siegel/errors.hpp"

using namespace siegel;
namespace fs = std::filesystem;

namespace {

const std::string kData = SIEGEL_DATA_DIR;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("siegel_cli_" + name)) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& sub = "") const { return (path / sub).string(); }
};

int run(std::vector<std::string> args) {
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::size_t line_count(const std::string& path) {
  std::ifstream f(path);
  std::size_t n = 0;
  for (std::string line; std::getline(f, line);) ++n;
  return n;
}

}  // namespace

TEST_CASE("configuration parsing") {
  std::istringstream in(
      "# comment\n"
      "order = 7\n"
      "rmax = 127\n"
      "rho = 0.25\n"
      "seed = 42\n"
      "dio_c = 0.5\n"
      "out = somewhere\n"
      "[map]\n"
      "1 1\n"
      "0 1.5\n"
      "order 1 component 1\n"
      "1 0 2\n");
  const cli::RunConfig cfg = cli::parse_config(in);
  CHECK(cfg.order == 7);
  CHECK(cfg.rmax == 127);
  CHECK(*cfg.rho == 0.25);
  CHECK_FALSE(cfg.delta.has_value());
  CHECK(cfg.seed == 42);
  CHECK(*cfg.dio_c == 0.5);
  CHECK(cfg.dio_tau == 1.0);
  CHECK(cfg.out == "somewhere");
  CHECK(cfg.map.vars() == 1);
  CHECK(cfg.map.truncation() == 1);

  std::istringstream bad_key("colour = blue\n[map]\n1 0\n0 1\n");
  CHECK_THROWS_AS(cli::parse_config(bad_key), ParseError);
  std::istringstream no_map("order = 3\n");
  CHECK_THROWS_AS(cli::parse_config(no_map), ParseError);
  std::istringstream bad_value("order = three\n[map]\n1 0\n0 1\n");
  CHECK_THROWS_AS(cli::parse_config(bad_value), ParseError);
  try {
    std::istringstream bad_row("order = 3\n[map]\n1 1\n0 1\norder 1 component 1\n1 0 2 x\n");
    cli::parse_config(bad_row);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
  }
}

TEST_CASE("exit codes") {
  TempDir tmp("codes");
  CHECK(run({"normalize", kData + "/lambda_minus_one.cfg", "--out", tmp.str()}) == cli::kResonance);
  CHECK(run({"normalize", kData + "/no_such_file.cfg"}) == cli::kIoError);
  CHECK(run({"normalize"}) == cli::kParseError);
  CHECK(run({"frobnicate", "x"}) == cli::kParseError);
  CHECK(run({"normalize", kData + "/golden_mean.cfg", "--order", "0", "--out", tmp.str()}) ==
        cli::kParseError);

  fs::create_directories(tmp.path);
  std::ofstream(tmp.str("broken.cfg")) << "order = 3\n[map]\n1 1\n";
  CHECK(run({"normalize", tmp.str("broken.cfg"), "--out", tmp.str()}) == cli::kParseError);
}

TEST_CASE("golden-mean pipeline") {
  TempDir tmp("golden");
  const std::string cfg = kData + "/golden_mean.cfg";
  const std::string out = tmp.str("run");
  REQUIRE(run({"normalize", cfg, "--out", out}) == cli::kOk);
  CHECK(fs::exists(out + "/map.txt"));
  CHECK(fs::exists(out + "/transform.txt"));
  CHECK(fs::exists(out + "/inverse_transform.txt"));
  CHECK(fs::exists(out + "/generators/X_15.txt"));
  CHECK(line_count(out + "/ledger.csv") > 1);
  CHECK(slurp(out + "/ledger.csv").rfind("N,R_max,r,s,norm_X,norm_W,bound_X,bound_W", 0) == 0);

  REQUIRE(run({"divisors", cfg, "--out", out}) == cli::kOk);
  CHECK(line_count(out + "/divisors.csv") == 1025);
  const std::string div = slurp(out + "/divisors_report.txt");
  CHECK(div.find("R_max=1023") != std::string::npos);

  CHECK(run({"bounds", cfg, "--out", out}) == cli::kOk);
  CHECK(fs::exists(out + "/certificate.txt"));
  CHECK(run({"verify", cfg, "--out", out}) == cli::kOk);
  CHECK(fs::exists(out + "/residuals.csv"));
  CHECK(fs::exists(out + "/verify_report.txt"));
  CHECK(run({"report", out}) == cli::kOk);
  const std::string report = slurp(out + "/report.txt");
  CHECK(report.find("certificate.txt") != std::string::npos);
  CHECK(report.find("divisors.csv") != std::string::npos);
}

TEST_CASE("reruns are byte-identical") {
  TempDir a("rerun_a"), b("rerun_b");
  const std::string cfg = kData + "/koenigs_half.cfg";
  for (const char* cmd : {"normalize", "divisors", "bounds", "verify"}) {
    CHECK(run({cmd, cfg, "--out", a.str()}) == cli::kOk);
    CHECK(run({cmd, cfg, "--out", b.str()}) == cli::kOk);
  }
  std::size_t compared = 0;
  for (const auto& e : fs::recursive_directory_iterator(a.path)) {
    if (!e.is_regular_file()) continue;
    const fs::path rel = fs::relative(e.path(), a.path);
    CHECK_MESSAGE(slurp(e.path().string()) == slurp((b.path / rel).string()), rel.string());
    ++compared;
  }
  CHECK(compared >= 10);
}
