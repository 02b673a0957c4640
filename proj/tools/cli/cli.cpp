#include "cli.hpp"

#include "config.hpp"
#include "csv.hpp"
#include "scan.hpp"

#include <cqed/amplitudes.hpp>
#include <cqed/bounds.hpp>
#include <cqed/errors.hpp>
#include <cqed/master.hpp>
#include <cqed/montecarlo.hpp>
#include <cqed/optimize.hpp>
#include <cqed/sweep.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <ostream>

namespace cqed::cli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

// Flags shared by the solver-facing subcommands. Values land in `flags` and
// override the config file.
struct Common {
  std::string config_path;
  Settings flags;

  void attach(CLI::App* sub, const std::vector<std::string_view>& sections) {
    sub->add_option("--config", config_path, "config file");
    for (const auto& k : known_keys()) {
      const auto section = k.key.substr(0, k.key.find('.'));
      if (std::find(sections.begin(), sections.end(), section) == sections.end()) continue;
      std::string key(k.key);
      sub->add_option_function<std::string>(
          std::string(k.flag), [this, key](const std::string& v) { flags[key] = v; },
          std::string(k.help));
    }
  }

  Settings merged() const {
    Settings s = config_path.empty() ? Settings{} : read_config_file(config_path);
    for (const auto& [key, value] : flags) s[key] = value;
    return s;
  }

  RunConfig load() const { return build_run_config(merged()); }
};

const std::vector<std::string_view> kAllSections = {"rates", "pulse", "stop", "tolerance", "run"};

// Opens the CSV destination; "-" or empty means `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ConfigError("cannot write '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct PhysicalInputs {
  double mu = 0.0;
  double omega_ge = 0.0;
  double wavelength = 0.0;
  double length = 0.0;
  double area = 0.0;
  double alpha_loss = 0.0;
  std::vector<CLI::Option*> options;

  void attach(CLI::App* sub, bool required) {
    auto add = [&](const char* name, double& target, const char* help) {
      auto* opt = sub->add_option(name, target, help);
      options.push_back(opt);
      return opt;
    };
    auto* mu_opt = add("--mu", mu, "transition dipole moment [C m]");
    auto* w_opt = add("--omega-ge", omega_ge, "transition angular frequency [rad/s]");
    auto* l_opt = add("--wavelength", wavelength, "transition wavelength [m]");
    auto* len_opt = add("--length", length, "cavity length [m]");
    auto* a_opt = add("--area", area, "effective mode area at the emitter [m^2]");
    add("--alpha-loss", alpha_loss, "round-trip internal loss");
    w_opt->excludes(l_opt);
    if (required) {
      mu_opt->required();
      len_opt->required();
      a_opt->required();
    }
  }

  bool any() const {
    return std::any_of(options.begin(), options.end(), [](auto* o) { return o->count() > 0; });
  }

  PhysicalCavity cavity(const RateSet& branching) const {
    PhysicalCavity c;
    c.mu_ge = mu;
    c.omega_ge = omega_ge > 0.0 ? omega_ge : (wavelength > 0.0 ? 2.0 * constants::kPi *
                                                                     constants::kSpeedOfLight /
                                                                     wavelength
                                                               : 0.0);
    if (!(c.omega_ge > 0.0)) throw ConfigError("one of --omega-ge or --wavelength is required");
    c.length = length;
    c.area_eff = area;
    c.alpha_loss = alpha_loss;
    c.r_u = branching.r_u;
    c.r_g = branching.r_g;
    c.r_o = branching.r_o;
    return c;
  }
};

void report_physical(std::ostream& out, const PhysicalCavity& cavity) {
  const auto pr = rates_from_physical(cavity);
  print_field(out, "g", pr.g);
  print_field(out, "kappa_in", pr.kappa_in);
  print_field(out, "gamma", pr.gamma);
  print_field(out, "r_A", pr.r_A);
  print_field(out, "C_in", pr.C_in);
  print_field(out, "C_in_roundtrip",
              cavity.alpha_loss > 0.0
                  ? cin_from_roundtrip(cavity.alpha_loss, pr.r_A, cavity.r_g, cavity.r_u)
                  : kInf);
  print_field(out, "pf_lower", pf_lower(pr.C_in, cavity.r_u));
  print_field(out, "kappa_ex_opt",
              pr.kappa_in > 0.0 && cavity.r_u < 1.0 ? kappa_ex_opt(pr.kappa_in, pr.C_in, cavity.r_u)
                                                    : 0.0);
}

void report_rates(std::ostream& out, const ValidatedRateSet& rates) {
  const auto b = bound_report(rates);
  print_field(out, "C", b.C);
  print_field(out, "C_in", b.C_in);
  print_field(out, "eta_esc", b.eta_esc);
  print_field(out, "ps_upper", b.ps_upper);
  print_field(out, "prep_upper", b.prep_upper);
  print_field(out, "pf_lower", b.pf_lower);
  print_field(out, "pf_lower_approx", b.pf_lower_approx);
  print_field(out, "kappa_ex_opt", b.kappa_ex_opt);
}

void write_amplitude_csv(std::ostream& os, const AmplitudeResult& a) {
  CsvWriter csv(os, {"t", "re_alpha_u", "im_alpha_u", "re_alpha_e", "im_alpha_e", "re_alpha_g",
                     "im_alpha_g", "emission"});
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    csv << a.times[i] << a.alpha_u[i].real() << a.alpha_u[i].imag() << a.alpha_e[i].real()
        << a.alpha_e[i].imag() << a.alpha_g[i].real() << a.alpha_g[i].imag()
        << a.emission_profile[i];
    csv.end_row();
  }
}

void write_master_csv(std::ostream& os, const MasterResult& m) {
  CsvWriter csv(os, {"t", "rho_uu", "rho_ee", "rho_gg", "re_rho_ue", "im_rho_ue", "p_g0", "p_o0",
                     "F_ex", "F_in", "F_g", "F_o", "F_u", "min_eigenvalue"});
  for (const auto& s : m.samples) {
    csv << s.t << s.rho(0, 0).real() << s.rho(1, 1).real() << s.rho(2, 2).real()
        << s.rho(0, 1).real() << s.rho(0, 1).imag() << s.p_g0 << s.p_o0 << s.flux.F_ex
        << s.flux.F_in << s.flux.F_g << s.flux.F_o << s.flux.F_u << s.min_eigenvalue;
    csv.end_row();
  }
}

int cmd_bound(std::ostream& out, const Common& common, const CLI::Option* c_in_opt, double c_in,
              const PhysicalInputs& physical) {
  const RunConfig cfg = common.load();
  if (physical.any()) {
    report_physical(out, physical.cavity(cfg.rates));
    return kExitOk;
  }
  if (c_in_opt->count() > 0) {
    const double r_u = cfg.rates.r_u;
    const double kappa_in = common.flags.count("rates.kappa_in") ? cfg.rates.kappa_in : 1.0;
    const double pf = pf_lower(c_in, r_u);
    const double ratio = kappa_ex_opt(1.0, c_in, r_u);
    print_field(out, "C_in", c_in);
    print_field(out, "r_u", r_u);
    print_field(out, "C_in_eff", effective_internal_cooperativity(c_in, r_u));
    print_field(out, "pf_lower", pf);
    print_field(out, "pf_lower_approx", pf_lower_approx(c_in));
    print_field(out, "ps_max", 1.0 - pf);
    print_field(out, "kappa_ex_opt_over_kappa_in", ratio);
    print_field(out, "kappa_ex_opt", kappa_ex_opt(kappa_in, c_in, r_u));
    return kExitOk;
  }
  report_rates(out, validate(cfg.rates));
  return kExitOk;
}

int cmd_simulate(std::ostream& out, const Common& common) {
  const RunConfig cfg = common.load();
  const auto rates = validate(cfg.rates);
  const DrivePulse pulse(cfg.pulse);
  const std::size_t points = cfg.output.empty() ? 0 : cfg.output_points;
  print_field(out, "solver", to_string(cfg.solver));

  switch (cfg.solver) {
    case SolverKind::kAmplitudes: {
      const auto a = evolve_amplitudes(rates, pulse, cfg.stop, cfg.tol, points);
      print_field(out, "P_S", a.ps_norep);
      print_field(out, "I_g", a.I_g);
      print_field(out, "I_e", a.I_e);
      print_field(out, "I_g_prime", a.I_g_prime);
      print_field(out, "final_norm", a.final_norm);
      print_field(out, "adiabaticity", adiabaticity(a, rates));
      print_field(out, "t_end", a.t_end);
      print_field(out, "steps", static_cast<double>(a.steps));
      print_field(out, "ps_upper", ps_upper(rates));
      if (!cfg.output.empty()) {
        Sink sink(cfg.output, out);
        write_amplitude_csv(sink.stream(), a);
      }
      break;
    }
    case SolverKind::kMaster: {
      const auto m = evolve_master(rates, pulse, cfg.stop, cfg.tol, points);
      const auto a = evolve_amplitudes(rates, pulse, cfg.stop, cfg.tol, 0);
      print_field(out, "P_S", m.ps_total);
      print_field(out, "P_rep", repump_contribution(m, a));
      print_field(out, "F_in", m.flux.F_in);
      print_field(out, "F_g", m.flux.F_g);
      print_field(out, "F_o", m.flux.F_o);
      print_field(out, "F_u", m.flux.F_u);
      print_field(out, "p_g0", m.p_g0);
      print_field(out, "p_o0", m.p_o0);
      print_field(out, "t_end", m.t_end);
      print_field(out, "steps", static_cast<double>(m.steps));
      print_field(out, "max_trace_error", m.max_trace_error);
      print_field(out, "min_eigenvalue", m.min_eigenvalue);
      print_field(out, "ps_upper", ps_upper(rates));
      print_field(out, "prep_upper", prep_upper(rates));
      if (!cfg.output.empty()) {
        Sink sink(cfg.output, out);
        write_master_csv(sink.stream(), m);
      }
      break;
    }
    case SolverKind::kMonteCarlo: {
      TrajectoryOptions opts;
      opts.stop = cfg.stop;
      opts.tol = cfg.tol;
      opts.workers = cfg.workers;
      const auto s = run_trajectories(rates, pulse, cfg.trajectories, cfg.seed, opts);
      print_field(out, "P_S", s.p_success_hat);
      print_field(out, "stderr", s.standard_error());
      print_field(out, "P_rep", s.p_rep_hat);
      print_field(out, "n", static_cast<double>(s.n_samples));
      print_field(out, "external", static_cast<double>(s.outcome_counts.external));
      print_field(out, "internal", static_cast<double>(s.outcome_counts.internal));
      print_field(out, "spont_g", static_cast<double>(s.outcome_counts.spont_g));
      print_field(out, "spont_o", static_cast<double>(s.outcome_counts.spont_o));
      print_field(out, "unterminated", static_cast<double>(s.outcome_counts.unterminated));
      print_field(out, "unresolved", static_cast<double>(s.unresolved));
      print_field(out, "mean_repumps", s.mean_repumps);
      print_field(out, "ps_upper", ps_upper(rates));
      if (!cfg.output.empty()) {
        Sink sink(cfg.output, out);
        CsvWriter csv(sink.stream(), {"repumps", "count"});
        for (std::size_t k = 0; k < s.repump_histogram.size(); ++k) {
          csv << static_cast<std::uint64_t>(k) << s.repump_histogram[k];
          csv.end_row();
        }
      }
      break;
    }
  }
  return kExitOk;
}

int cmd_sweep(std::ostream& out, std::ostream& err, const Common& common,
              const std::vector<std::string>& vary) {
  const RunConfig cfg = common.load();
  SweepSpec spec;
  for (const auto& item : vary) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--vary expects name=grid, got '" + item + "'");
    spec.axes.push_back({item.substr(0, eq), parse_grid(std::string_view(item).substr(eq + 1))});
  }
  spec.base = cfg.rates;
  spec.pulse = cfg.pulse;
  spec.stop = cfg.stop;
  spec.tol = cfg.tol;
  spec.solver = cfg.solver;
  spec.trajectories = cfg.trajectories;
  spec.seed = cfg.seed;
  spec.workers = cfg.workers;
  const auto table = sweep(spec);

  Sink sink(cfg.output, out);
  auto header = table.parameter_names;
  for (const char* col : {"ok", "P_S", "ps_upper", "pf_lower", "eta_esc", "C", "C_in",
                          "adiabaticity", "P_rep", "error"}) {
    header.emplace_back(col);
  }
  CsvWriter csv(sink.stream(), header);
  std::size_t failed = 0;
  for (const auto& row : table.rows) {
    for (double p : row.parameters) csv << p;
    csv << std::uint64_t{row.ok ? 1u : 0u} << row.ps << row.ps_upper << row.pf_lower
        << row.eta_esc << row.C << row.C_in << row.adiabaticity << row.p_rep
        << std::string_view(row.error);
    csv.end_row();
    if (!row.ok) ++failed;
  }
  if (failed > 0) err << "cqed: warning: " << failed << " of " << table.rows.size() << " rows failed\n";
  return kExitOk;
}

std::vector<FreeParameter> parse_free(const std::vector<std::string>& items) {
  std::vector<FreeParameter> free;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    const auto colon = item.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos) {
      throw ConfigError("--free expects name=lo:hi, got '" + item + "'");
    }
    free.push_back({item.substr(0, eq),
                    parse_double(std::string_view(item).substr(eq + 1, colon - eq - 1), "lo"),
                    parse_double(std::string_view(item).substr(colon + 1), "hi")});
  }
  return free;
}

struct OptimizeArgs {
  std::string target = "kappa_ex";
  double lo = 0.0;
  double hi = 0.0;
  double xtol = 1e-6;
  std::vector<std::string> free;
  std::size_t budget = 200;
  std::size_t restarts = 2;
};

int cmd_optimize(std::ostream& out, const Common& common, const OptimizeArgs& args) {
  const RunConfig cfg = common.load();
  ObjectiveOptions objective;
  objective.stop = cfg.stop;
  objective.tol = cfg.tol;
  if (cfg.solver == SolverKind::kMonteCarlo) {
    throw ConfigError("optimize supports the amplitudes and master solvers");
  }
  objective.include_repumped = cfg.solver == SolverKind::kMaster;

  OptimizationOutcome result;
  std::vector<std::string> names;
  if (args.target == "kappa_ex") {
    if (!(args.hi > args.lo)) throw ConfigError("kappa_ex target needs --lo < --hi");
    result = maximize_over_kappa_ex(cfg.rates, DrivePulse(cfg.pulse), args.lo, args.hi, args.xtol,
                                    objective);
    names = {"kappa_ex"};
  } else if (args.target == "pulse") {
    PulseFamilySpec family{cfg.pulse, parse_free(args.free)};
    if (family.free.empty()) throw ConfigError("pulse target needs at least one --free");
    NelderMeadOptions nm;
    nm.restarts = args.restarts;
    result = optimize_pulse(validate(cfg.rates), family, args.budget, cfg.seed, objective, nm);
    for (const auto& f : family.free) names.push_back(f.name);
  } else {
    throw ConfigError("unknown optimize target '" + args.target + "'");
  }

  print_field(out, "target", args.target);
  print_field(out, "solver", to_string(cfg.solver));
  for (std::size_t i = 0; i < names.size(); ++i) print_field(out, "best_" + names[i], result.best[i]);
  print_field(out, "P_S", result.best_ps);
  print_field(out, "evaluations", static_cast<double>(result.evaluations));
  print_field(out, "converged", result.converged ? "true" : "false");
  if (!result.message.empty()) print_field(out, "message", result.message);
  if (!cfg.output.empty()) {
    Sink sink(cfg.output, out);
    auto header = names;
    header.emplace_back("P_S");
    CsvWriter csv(sink.stream(), header);
    for (const auto& p : result.trace) {
      for (double x : p.x) csv << x;
      csv << p.value;
      csv.end_row();
    }
  }
  return kExitOk;
}

int cmd_physical(std::ostream& out, const Common& common, const PhysicalInputs& physical) {
  const RunConfig cfg = common.load();
  report_physical(out, physical.cavity(cfg.rates));
  return kExitOk;
}

int cmd_verify(std::ostream& out, std::ostream& err, std::uint64_t draws, std::uint64_t seed,
               std::size_t workers) {
  const auto outcomes = run_scan(draws, seed, {}, workers);
  std::uint64_t within = 0;
  std::uint64_t violations = 0;
  std::uint64_t failed = 0;
  std::uint64_t rep_above = 0;
  double worst = -kInf;
  for (const auto& o : outcomes) {
    if (!o.ok()) {
      ++failed;
      continue;
    }
    const double excess = o.ps - o.ps_upper;
    worst = std::max(worst, excess);
    if (excess > 1e-6) {
      ++violations;
    } else {
      ++within;
    }
    if (o.p_rep > o.prep_upper + 1e-6) ++rep_above;
  }
  out << within << "/" << draws << " within bound\n";
  print_field(out, "failed", static_cast<double>(failed));
  print_field(out, "max_ps_excess", worst);
  out << "p_rep_above_slow_limit = " << rep_above << "/" << draws - failed << '\n';
  if (violations > 0) {
    err << "cqed: error: BoundViolation: " << violations << " of " << draws
        << " draws exceed ps_upper\n";
    return kExitBoundViolation;
  }
  if (failed > 0) {
    err << "cqed: error: NotConverged: " << failed << " of " << draws << " draws failed\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kToleranceNotMet:
    case ErrorKind::kNotConverged:
    case ErrorKind::kMismatchedInputs:
      return kExitNumerical;
    case ErrorKind::kBoundViolation:
      return kExitBoundViolation;
    default:
      return kExitUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cavity single-photon source efficiency toolkit", "cqed"};
  app.require_subcommand(1);
  app.fallthrough(false);

  Common common;

  auto* bound = app.add_subcommand("bound", "closed-form efficiency bounds");
  double c_in = 0.0;
  auto* c_in_opt = bound->add_option("--c-in", c_in, "internal cooperativity (closed-form mode)");
  PhysicalInputs bound_physical;
  bound_physical.attach(bound, false);
  common.attach(bound, {"rates", "run"});

  auto* simulate = app.add_subcommand("simulate", "run one solver and print a summary");
  common.attach(simulate, kAllSections);

  auto* sweep_cmd = app.add_subcommand("sweep", "Cartesian parameter sweep to CSV");
  std::vector<std::string> vary;
  sweep_cmd->add_option("--vary", vary, "name=v1,v2,... | name=lo:hi:n[:log]")->required();
  common.attach(sweep_cmd, kAllSections);

  auto* optimize = app.add_subcommand("optimize", "maximize P_S over kappa_ex or pulse parameters");
  OptimizeArgs opt;
  optimize->add_option("--target", opt.target, "kappa_ex|pulse")->capture_default_str();
  optimize->add_option("--lo", opt.lo, "kappa_ex lower end");
  optimize->add_option("--hi", opt.hi, "kappa_ex upper end");
  optimize->add_option("--xtol", opt.xtol, "kappa_ex bracket width")->capture_default_str();
  optimize->add_option("--free", opt.free, "pulse parameter name=lo:hi");
  optimize->add_option("--budget", opt.budget, "distinct evaluations")->capture_default_str();
  optimize->add_option("--restarts", opt.restarts, "Nelder-Mead restarts")->capture_default_str();
  common.attach(optimize, kAllSections);

  auto* physical = app.add_subcommand("physical", "rates and limits from SI cavity parameters");
  PhysicalInputs physical_inputs;
  physical_inputs.attach(physical, true);
  Common physical_common;
  {
    // Only the branching ratios are meaningful here.
    for (const char* key : {"rates.r_u", "rates.r_g", "rates.r_o"}) {
      const auto& info = *std::find_if(known_keys().begin(), known_keys().end(),
                                       [&](const KeyInfo& k) { return k.key == key; });
      std::string k(key);
      physical->add_option_function<std::string>(
          std::string(info.flag),
          [&physical_common, k](const std::string& v) { physical_common.flags[k] = v; },
          std::string(info.help));
    }
  }

  auto* verify = app.add_subcommand("verify", "random-draw bound-compliance scan");
  std::uint64_t draws = 200;
  std::uint64_t seed = 7;
  std::size_t workers = 0;
  verify->add_option("--draws", draws, "number of random parameter sets")->capture_default_str();
  verify->add_option("--seed", seed, "scan seed")->capture_default_str();
  verify->add_option("--workers", workers, "worker threads (0: automatic)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "cqed: error: UsageError: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  try {
    if (bound->parsed()) return cmd_bound(out, common, c_in_opt, c_in, bound_physical);
    if (simulate->parsed()) return cmd_simulate(out, common);
    if (sweep_cmd->parsed()) return cmd_sweep(out, err, common, vary);
    if (optimize->parsed()) return cmd_optimize(out, common, opt);
    if (physical->parsed()) return cmd_physical(out, physical_common, physical_inputs);
    if (verify->parsed()) return cmd_verify(out, err, draws, seed, workers);
  } catch (const ConfigError& e) {
    err << "cqed: error: " << one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "cqed: error: " << one_line(e.what()) << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "cqed: error: InternalError: " << one_line(e.what()) << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace cqed::cli
