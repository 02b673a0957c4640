#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace cqed::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

const KeyInfo* find_key(std::string_view key) {
  for (const auto& info : known_keys()) {
    if (info.key == key) return &info;
  }
  return nullptr;
}

void assign(const Settings& s, std::string_view key, double& target) {
  if (auto it = s.find(std::string(key)); it != s.end()) target = parse_double(it->second, key);
}

bool has(const Settings& s, std::string_view key) { return s.count(std::string(key)) != 0; }

}  // namespace

const std::vector<KeyInfo>& known_keys() {
  static const std::vector<KeyInfo> keys = {
      {"rates.g", "--g", "atom-cavity coupling"},
      {"rates.kappa_in", "--kappa-in", "internal cavity loss rate"},
      {"rates.kappa_ex", "--kappa-ex", "output coupling rate"},
      {"rates.gamma", "--gamma", "excited-state amplitude decay rate"},
      {"rates.r_u", "--r-u", "branching ratio back to |u>"},
      {"rates.r_g", "--r-g", "branching ratio to |g>"},
      {"rates.r_o", "--r-o", "branching ratio to other states"},
      {"rates.delta_e", "--delta-e", "one-photon detuning"},
      {"rates.delta_u", "--delta-u", "two-photon detuning"},
      {"pulse.family", "--family", "constant|sin2_ramp|gaussian|piecewise_linear|vstirap_sin"},
      {"pulse.omega_max", "--omega-max", "peak drive amplitude"},
      {"pulse.duration", "--duration", "drive duration"},
      {"pulse.ramp_time", "--ramp-time", "sin2_ramp rise time (<= 0: duration)"},
      {"pulse.center", "--center", "gaussian center"},
      {"pulse.width", "--width", "gaussian width"},
      {"pulse.knots", "--knots", "piecewise_linear knots 't:omega, ...'"},
      {"pulse.chirp", "--chirp", "linear two-photon detuning ramp"},
      {"stop.t_max", "--t-max", "integration horizon"},
      {"stop.eps_stop", "--eps-stop", "residual excitation threshold"},
      {"tolerance.rtol", "--rtol", "relative step tolerance"},
      {"tolerance.atol", "--atol", "absolute step tolerance"},
      {"run.solver", "--solver", "amplitudes|master|montecarlo"},
      {"run.seed", "--seed", "random seed"},
      {"run.trajectories", "--trajectories", "Monte Carlo sample count"},
      {"run.output_points", "--output-points", "time-series samples"},
      {"run.workers", "--workers", "worker threads (0: automatic)"},
      {"run.output", "--output", "CSV output path"},
      {"run.units", "--units", "gamma|angular"},
  };
  return keys;
}

Settings parse_config(std::istream& in) {
  namespace pt = boost::property_tree;
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};

  // read_ini drops empty sections and knows no inline comments, so both are
  // handled here. A comment starts at ';' or '#' at line start or after blanks.
  std::istringstream lines(text);
  std::string cleaned;
  for (std::string line; std::getline(lines, line);) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if ((line[i] == ';' || line[i] == '#') && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line.erase(i);
        break;
      }
    }
    cleaned += line;
    cleaned += '\n';
    const auto t = trim(line);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') continue;
    const std::string section(trim(t.substr(1, t.size() - 2)));
    if (std::none_of(known_keys().begin(), known_keys().end(), [&](const KeyInfo& k) {
          return k.key.substr(0, k.key.find('.')) == section;
        })) {
      throw ConfigError("unknown section '" + section + "'");
    }
  }

  pt::ptree tree;
  try {
    std::istringstream body(cleaned);
    pt::read_ini(body, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
  }
  Settings out;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("key '" + section + "' outside a section");
    for (const auto& [name, value] : body) {
      const std::string key = section + "." + name;
      if (!find_key(key)) throw ConfigError("unknown key '" + key + "'");
      out[key] = std::string(trim(value.data()));
    }
  }
  return out;
}

Settings read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return parse_config(in);
}

double parse_double(std::string_view text, std::string_view what) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("bad number '" + std::string(text) + "' for " + std::string(what));
  }
  return value;
}

std::uint64_t parse_count(std::string_view text, std::string_view what) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("bad integer '" + std::string(text) + "' for " + std::string(what));
  }
  return value;
}

std::vector<Knot> parse_knots(std::string_view text) {
  std::vector<Knot> knots;
  if (trim(text).empty()) return knots;
  for (auto item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw ConfigError("knot '" + std::string(item) + "' is not t:omega");
    knots.push_back({parse_double(parts[0], "knot time"), parse_double(parts[1], "knot omega")});
  }
  return knots;
}

std::vector<double> parse_grid(std::string_view text) {
  text = trim(text);
  if (text.find(':') == std::string_view::npos) {
    std::vector<double> values;
    for (auto item : split(text, ',')) values.push_back(parse_double(item, "grid value"));
    return values;
  }
  const auto parts = split(text, ':');
  if (parts.size() != 3 && !(parts.size() == 4 && parts[3] == "log")) {
    throw ConfigError("grid '" + std::string(text) + "' is not lo:hi:n or lo:hi:n:log");
  }
  const double lo = parse_double(parts[0], "grid start");
  const double hi = parse_double(parts[1], "grid end");
  const auto n = parse_count(parts[2], "grid size");
  const bool log = parts.size() == 4;
  if (n == 0) throw ConfigError("grid size must be positive");
  if (log && !(lo > 0.0 && hi > 0.0)) throw ConfigError("log grid needs positive ends");
  std::vector<double> values(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    values[i] = log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
  }
  if (n > 1) values.back() = hi;
  return values;
}

RunConfig build_run_config(const Settings& s) {
  RunConfig cfg;
  for (const auto& [key, value] : s) {
    if (!find_key(key)) throw ConfigError("unknown key '" + key + "'");
  }

  if (auto it = s.find("run.units"); it != s.end()) {
    if (it->second == "gamma") {
      cfg.units = Units::kGamma;
    } else if (it->second == "angular") {
      cfg.units = Units::kAngular;
    } else {
      throw ConfigError("units must be gamma or angular, got '" + it->second + "'");
    }
  }

  RateSet& r = cfg.rates;
  assign(s, "rates.g", r.g);
  assign(s, "rates.kappa_in", r.kappa_in);
  assign(s, "rates.kappa_ex", r.kappa_ex);
  assign(s, "rates.gamma", r.gamma);
  assign(s, "rates.delta_e", r.delta_e);
  assign(s, "rates.delta_u", r.delta_u);
  if (cfg.units == Units::kGamma && r.gamma != 1.0) {
    throw ConfigError("units = gamma requires gamma = 1");
  }
  if (cfg.units == Units::kAngular && !has(s, "rates.gamma")) {
    throw ConfigError("units = angular requires an explicit gamma");
  }

  // Unspecified branching ratios are completed so that they sum to one.
  r.r_u = 0.0;
  r.r_o = 0.0;
  assign(s, "rates.r_u", r.r_u);
  assign(s, "rates.r_o", r.r_o);
  if (has(s, "rates.r_g")) {
    assign(s, "rates.r_g", r.r_g);
    if (!has(s, "rates.r_o")) r.r_o = std::max(0.0, 1.0 - r.r_u - r.r_g);
  } else {
    r.r_g = 1.0 - r.r_u - r.r_o;
  }

  PulseShape& p = cfg.pulse;
  if (auto it = s.find("pulse.family"); it != s.end()) {
    const auto family = pulse_family_from_string(it->second);
    if (!family) throw ConfigError("unknown pulse family '" + it->second + "'");
    p.family = *family;
  }
  assign(s, "pulse.omega_max", p.omega_max);
  assign(s, "pulse.duration", p.duration);
  assign(s, "pulse.ramp_time", p.ramp_time);
  assign(s, "pulse.center", p.center);
  assign(s, "pulse.width", p.width);
  assign(s, "pulse.chirp", p.chirp);
  if (auto it = s.find("pulse.knots"); it != s.end()) p.knots = parse_knots(it->second);
  if (p.family == PulseFamily::kGaussian && !has(s, "pulse.center")) p.center = 0.5 * p.duration;

  assign(s, "stop.t_max", cfg.stop.t_max);
  assign(s, "stop.eps_stop", cfg.stop.eps_stop);
  assign(s, "tolerance.rtol", cfg.tol.rtol);
  assign(s, "tolerance.atol", cfg.tol.atol);

  if (auto it = s.find("run.solver"); it != s.end()) {
    if (it->second == "amplitudes") {
      cfg.solver = SolverKind::kAmplitudes;
    } else if (it->second == "master") {
      cfg.solver = SolverKind::kMaster;
    } else if (it->second == "montecarlo") {
      cfg.solver = SolverKind::kMonteCarlo;
    } else {
      throw ConfigError("unknown solver '" + it->second + "'");
    }
  }
  if (auto it = s.find("run.seed"); it != s.end()) cfg.seed = parse_count(it->second, "seed");
  if (auto it = s.find("run.trajectories"); it != s.end()) {
    cfg.trajectories = parse_count(it->second, "trajectories");
  }
  if (auto it = s.find("run.output_points"); it != s.end()) {
    cfg.output_points = parse_count(it->second, "output_points");
  }
  if (auto it = s.find("run.workers"); it != s.end()) cfg.workers = parse_count(it->second, "workers");
  if (auto it = s.find("run.output"); it != s.end()) cfg.output = it->second;
  return cfg;
}

}  // namespace cqed::cli
