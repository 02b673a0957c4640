#pragma once

#include <cqed/model.hpp>
#include <cqed/optimize.hpp>
#include <cqed/pulse.hpp>
#include <cqed/solver_options.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cqed::cli {

// Malformed config file, unknown key, or an unparsable value. Exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& detail) : std::runtime_error("ConfigError: " + detail) {}
};

enum class Units { kGamma, kAngular };

struct RunConfig {
  RateSet rates;
  PulseShape pulse;
  StopRule stop;
  ToleranceSpec tol;
  SolverKind solver = SolverKind::kMaster;
  std::uint64_t seed = 1;
  std::uint64_t trajectories = 10000;
  std::size_t output_points = kDefaultOutputPoints;
  std::size_t workers = 0;
  std::string output;  // empty: no file
  Units units = Units::kGamma;
};

// Flat "section.key" -> raw value. Both config files and command-line flags
// feed one of these; flags are applied last.
using Settings = std::map<std::string, std::string>;

struct KeyInfo {
  std::string_view key;   // "section.name"
  std::string_view flag;  // "--name-with-dashes"
  std::string_view help;
};

const std::vector<KeyInfo>& known_keys();

// INI-style text: [section] headers, `key = value` lines, ';' or '#'
// comments. Unknown sections or keys and repeated keys are rejected.
Settings parse_config(std::istream& in);
Settings read_config_file(const std::string& path);

// Resolves defaults, branching-ratio completion and unit checks. Does not run
// model validation; that happens when the rates are used.
RunConfig build_run_config(const Settings& settings);

double parse_double(std::string_view text, std::string_view what);
std::uint64_t parse_count(std::string_view text, std::string_view what);

// "t:omega, t:omega, ..."
std::vector<Knot> parse_knots(std::string_view text);

// "v1,v2,..." or "lo:hi:n" (linear) or "lo:hi:n:log".
std::vector<double> parse_grid(std::string_view text);

}  // namespace cqed::cli
