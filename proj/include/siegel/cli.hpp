#ifndef SIEGEL_CLI_HPP
#define SIEGEL_CLI_HPP

// Command-line driver: run configuration, subcommands and exit codes.
//
// A configuration file holds `key = value` lines followed by a `[map]`
// section in the map text format.  Recognised keys: order, rmax, rho, delta,
// eps_res, seed, dio_c, dio_tau, out.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "siegel/maps.hpp"

namespace siegel::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kParseError = 2,
  kResonance = 3,
  kEnumerationTooLarge = 4,
  kCertificateFailed = 5,
};

struct RunConfig {
  std::string subcommand;
  std::string input;
  AnalyticMap map;
  int order = 10;
  int rmax = 1023;
  std::optional<double> rho;
  std::optional<double> delta;
  double eps_res = kDefaultResonanceThreshold;
  std::string out = "run";
  std::uint64_t seed = 20240607;
  /// alpha_r >= dio_c / r^dio_tau beyond the table; required for a finite Gamma bound.
  std::optional<double> dio_c;
  double dio_tau = 1.0;
};

/// Parses the key/value header and the map section.  Throws ParseError.
RunConfig parse_config(std::istream& is);
/// Throws std::ios_base::failure when the file cannot be opened.
RunConfig load_config(const std::string& path);

int cmd_normalize(const RunConfig& cfg, std::ostream& log);
int cmd_divisors(const RunConfig& cfg, std::ostream& log);
int cmd_bounds(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);
/// Concatenates every artifact of the run directory into report.txt.
int cmd_report(const std::string& dir, std::ostream& log);

/// Full driver: parses argv, dispatches, maps exceptions to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace siegel::cli

#endif  // SIEGEL_CLI_HPP
