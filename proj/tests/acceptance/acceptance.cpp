// Acceptance suite: one PASS/FAIL line per criterion. Run without arguments
// for all criteria, or with `--criterion N` for one. Exit status is non-zero
// if any selected criterion fails.

#include "cli/scan.hpp"

#include <cqed/amplitudes.hpp>
#include <cqed/bounds.hpp>
#include <cqed/master.hpp>
#include <cqed/montecarlo.hpp>
#include <cqed/rng.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cqed;

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<Verdict()> run;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double log_uniform(SplitMix64& rng, double lo, double hi) {
  return lo * std::pow(hi / lo, rng.uniform_open());
}

RateSet limit_rates(double kappa_ex) {
  RateSet r;
  r.g = 10.0;
  r.kappa_in = 1.0;
  r.kappa_ex = kappa_ex;
  r.gamma = 1.0;
  r.r_u = 0.0;
  r.r_g = 1.0;
  r.r_o = 0.0;
  return r;
}

// ---------------------------------------------------------------- 1
Verdict closed_forms() {
  Verdict v;
  std::ostringstream bad;
  auto check = [&](const char* what, double got, double want, double tol) {
    if (!(std::abs(got - want) <= tol)) {
      v.pass = false;
      bad << what << "=" << fmt("%.17g", got) << " ";
    }
  };
  check("pf_lower(4,0)", pf_lower(4.0, 0.0), 0.5, 1e-12);
  check("kappa_ex_opt(1,4,0)", kappa_ex_opt(1.0, 4.0, 0.0), 3.0, 1e-12);
  check("pf_lower(40,0.2)", pf_lower(40.0, 0.2), 2.0 / (1.0 + std::sqrt(101.0)), 1e-12);
  RateSet r;
  r.g = 4.0;  // C = 16 / (2 * 4 * 1) = 2
  r.kappa_in = 1.0;
  r.kappa_ex = 3.0;
  r.r_u = 0.5;
  r.r_g = 0.5;
  check("ps_upper(3,1,C=2,0.5)", ps_upper(validate(r)), 2.0 / 3.0, 1e-12);

  SplitMix64 rng(101);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double kappa_in = log_uniform(rng, 1e-3, 1e3);
    const double c_in = log_uniform(rng, 1e-3, 1e6);
    const double r_u = 0.99 * rng.uniform_open();
    const double diff = std::abs(pf_lower(c_in, r_u) -
                                 2.0 * kappa_in / (kappa_in + kappa_ex_opt(kappa_in, c_in, r_u)));
    worst = std::max(worst, diff);
  }
  check("identity", worst, 0.0, 1e-12);
  v.detail = bad.str() + "max |pf_lower - 2 kin/kopt| over 1000 draws = " + fmt("%.2e", worst);
  return v;
}

// ---------------------------------------------------------------- 2, 5
const std::vector<cli::DrawOutcome>& no_repump_scan() {
  static const auto scan = [] {
    cli::DrawOptions opts;
    opts.r_u_max = 0.0;
    return cli::run_scan(100, 2, opts);
  }();
  return scan;
}

Verdict oracle_equivalence() {
  const auto& scan = no_repump_scan();
  std::size_t converged = 0;
  double worst = 0.0;
  for (const auto& o : scan) {
    if (!o.ok()) continue;
    ++converged;
    worst = std::max(worst, std::abs(o.master->ps_total - o.amplitudes->ps_norep));
  }
  Verdict v;
  v.pass = worst <= 1e-7 && converged >= 90;
  v.detail = std::to_string(converged) + "/100 converged, max |P_S(master) - P_S(amplitudes)| = " +
             fmt("%.2e", worst);
  return v;
}

Verdict norm_bookkeeping() {
  const auto& scan = no_repump_scan();
  double worst_norm = 0.0;
  double worst_identity = 0.0;
  std::size_t converged = 0;
  for (const auto& o : scan) {
    if (!o.ok()) continue;
    ++converged;
    const auto& a = *o.amplitudes;
    const auto& r = o.draw.rates;
    const double kappa = r.kappa_in + r.kappa_ex;
    worst_norm = std::max(worst_norm,
                          std::abs(a.final_norm + 2.0 * r.gamma * a.I_e + 2.0 * kappa * a.I_g - 1.0));
    const double rel =
        std::abs(a.I_e - (a.I_g_prime + kappa * kappa * a.I_g) / (r.g * r.g)) / a.I_e;
    if (a.I_e > 0.0) worst_identity = std::max(worst_identity, rel);
  }
  Verdict v;
  v.pass = worst_norm <= 1e-8 && worst_identity <= 1e-6 && converged >= 90;
  v.detail = std::to_string(converged) + " runs, max norm defect " + fmt("%.2e", worst_norm) +
             ", max I_e identity rel. error " + fmt("%.2e", worst_identity);
  return v;
}

// ---------------------------------------------------------------- 3
Verdict bound_compliance() {
  const auto scan = cli::run_scan(200, 3);
  std::size_t failed = 0;
  std::size_t ps_violations = 0;
  std::size_t rep_violations = 0;
  double worst_ps = -1.0;
  double worst_rep = -1.0;
  double worst_rep_adiabaticity = 0.0;
  for (const auto& o : scan) {
    if (!o.ok()) {
      ++failed;
      continue;
    }
    const double ps_excess = o.ps - o.ps_upper;
    const double rep_excess = o.p_rep - o.prep_upper;
    worst_ps = std::max(worst_ps, ps_excess);
    if (ps_excess > 1e-6) ++ps_violations;
    if (rep_excess > 1e-6) ++rep_violations;
    if (rep_excess > worst_rep) {
      worst_rep = rep_excess;
      worst_rep_adiabaticity = adiabaticity(*o.amplitudes, validate(o.draw.rates));
    }
  }
  Verdict v;
  v.pass = failed == 0 && ps_violations == 0 && rep_violations == 0;
  v.detail = "P_S above ceiling: " + std::to_string(ps_violations) +
             "/200 (max excess " + fmt("%.2e", worst_ps) + "); P_rep above repump bound: " +
             std::to_string(rep_violations) + "/200 (max excess " + fmt("%.3g", worst_rep) +
             " at adiabaticity " + fmt("%.3g", worst_rep_adiabaticity) + "); failed runs " +
             std::to_string(failed);
  return v;
}

// ---------------------------------------------------------------- 4, 6
struct LimitScan {
  double best_duration = 0.0;
  double best_pf = 1.0;
  double best_ps = 0.0;
};

const std::vector<double> kDurations = {25.0, 50.0, 100.0, 200.0, 500.0};

double failure_at(double kappa_ex, double duration) {
  const auto m = evolve_master(validate(limit_rates(kappa_ex)), DrivePulse::sin2_ramp(1.0, duration),
                               {}, {}, 0);
  return 1.0 - m.ps_total;
}

const LimitScan& limit_scan() {
  static const LimitScan scan = [] {
    LimitScan s;
    const double k_opt = kappa_ex_opt(1.0, 50.0, 0.0);
    for (double t : kDurations) {
      const double pf = failure_at(k_opt, t);
      if (pf < s.best_pf) {
        s.best_pf = pf;
        s.best_ps = 1.0 - pf;
        s.best_duration = t;
      }
    }
    return s;
  }();
  return scan;
}

Verdict achievability() {
  const auto& s = limit_scan();
  const double bound = pf_lower(50.0, 0.0);
  const double k_opt = kappa_ex_opt(1.0, 50.0, 0.0);
  const double pf_half = failure_at(0.5 * k_opt, s.best_duration);
  const double pf_double = failure_at(2.0 * k_opt, s.best_duration);
  Verdict v;
  v.pass = s.best_pf >= bound && s.best_pf <= 1.25 * bound && pf_half > s.best_pf &&
           pf_double > s.best_pf;
  v.detail = "pf_lower " + fmt("%.9f", bound) + ", best P_F " + fmt("%.9f", s.best_pf) +
             " (ratio " + fmt("%.6f", s.best_pf / bound) + ", duration " +
             fmt("%.0f", s.best_duration) + "); P_F at 0.5x/2x kappa_ex_opt " +
             fmt("%.6f", pf_half) + "/" + fmt("%.6f", pf_double);
  return v;
}

Verdict monte_carlo() {
  const auto& s = limit_scan();
  const auto rates = validate(limit_rates(kappa_ex_opt(1.0, 50.0, 0.0)));
  const auto pulse = DrivePulse::sin2_ramp(1.0, s.best_duration);
  const auto a = run_trajectories(rates, pulse, 100000, 2024);
  TrajectoryOptions serial;
  serial.workers = 1;
  const auto b = run_trajectories(rates, pulse, 100000, 2024, serial);
  const double z = (a.p_success_hat - s.best_ps) / a.standard_error();
  Verdict v;
  v.pass = std::abs(z) <= 3.0 && a == b;
  v.detail = "p_hat " + fmt("%.5f", a.p_success_hat) + " +- " + fmt("%.5f", a.standard_error()) +
             " vs master " + fmt("%.6f", s.best_ps) + " (z = " + fmt("%.2f", z) + "), rerun " +
             (a == b ? "bit-identical" : "DIFFERS");
  return v;
}

// ---------------------------------------------------------------- 7
Verdict physical_calculator() {
  SplitMix64 rng(707);
  double worst_roundtrip = 0.0;
  double worst_invariance = 0.0;
  for (int i = 0; i < 100; ++i) {
    PhysicalCavity c;
    c.mu_ge = log_uniform(rng, 1e-30, 1e-28);
    c.omega_ge = 2.0 * constants::kPi * constants::kSpeedOfLight / log_uniform(rng, 3e-7, 2e-6);
    c.length = log_uniform(rng, 1e-5, 1e-1);
    c.area_eff = log_uniform(rng, 1e-12, 1e-6);
    c.alpha_loss = log_uniform(rng, 1e-6, 1e-1);
    c.r_u = 0.9 * rng.uniform_open();
    c.r_g = (1.0 - c.r_u) * (0.05 + 0.95 * rng.uniform_open());
    c.r_o = 1.0 - c.r_u - c.r_g;
    const auto p = rates_from_physical(c);
    const double roundtrip = cin_from_roundtrip(c.alpha_loss, p.r_A, c.r_g, c.r_u);
    worst_roundtrip = std::max(worst_roundtrip, std::abs(p.C_in - roundtrip) / roundtrip);

    auto longer = c;
    longer.length *= 2.0;
    auto stronger = c;
    stronger.mu_ge *= 2.0;
    for (const auto& variant : {longer, stronger}) {
      const double other = rates_from_physical(variant).C_in;
      worst_invariance = std::max(worst_invariance, std::abs(other - p.C_in) / p.C_in);
    }
  }
  Verdict v;
  v.pass = worst_roundtrip <= 1e-12 && worst_invariance <= 1e-12;
  v.detail = "max rel. roundtrip mismatch " + fmt("%.2e", worst_roundtrip) +
             ", max rel. change under L->2L, mu->2mu " + fmt("%.2e", worst_invariance);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::optional<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "closed-form suite", 1.0, closed_forms},
      {2, "master/amplitude oracle equivalence", 120.0, oracle_equivalence},
      {3, "bound compliance", 300.0, bound_compliance},
      {4, "achievability of the failure limit", 180.0, achievability},
      {5, "norm bookkeeping", 120.0, norm_bookkeeping},
      {6, "Monte Carlo consistency", 120.0, monte_carlo},
      {7, "physical calculator", 1.0, physical_calculator},
  };

  bool all = true;
  bool ran = false;
  for (const auto& c : criteria) {
    if (only && *only != c.id) continue;
    ran = true;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("threw ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = v.pass && in_time;
    all = all && pass;
    std::printf("[%s] criterion %d, %s: %s (%.2f s, limit %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.title, v.detail.c_str(), secs, c.limit_s, in_time ? "" : ", TOO SLOW");
    std::fflush(stdout);
  }
  if (!ran) {
    std::fprintf(stderr, "no such criterion\n");
    return 2;
  }
  return all ? 0 : 1;
}
