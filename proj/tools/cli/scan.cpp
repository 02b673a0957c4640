#include "scan.hpp"

#include <cqed/bounds.hpp>
#include <cqed/errors.hpp>
#include <cqed/parallel.hpp>
#include <cqed/rng.hpp>

#include <cmath>

namespace cqed::cli {
namespace {

double log_uniform(SplitMix64& rng, double lo, double hi) {
  return lo * std::pow(hi / lo, rng.uniform_open());
}

}  // namespace

Draw random_draw(std::uint64_t seed, std::uint64_t index, const DrawOptions& options) {
  auto rng = SplitMix64::stream(seed, index);
  Draw d;
  RateSet& r = d.rates;
  r.gamma = 1.0;
  r.g = log_uniform(rng, 0.1, 10.0);
  r.kappa_in = log_uniform(rng, 0.1, 10.0);
  r.kappa_ex = log_uniform(rng, 0.1, 10.0);
  r.r_u = options.r_u_max * rng.uniform_open();
  const double rest = 1.0 - r.r_u;
  r.r_g = rest * rng.uniform_open();
  r.r_o = rest - r.r_g;
  r.delta_e = 4.0 * rng.uniform_open() - 2.0;
  r.delta_u = 2.0 * rng.uniform_open() - 1.0;

  PulseShape& s = d.pulse;
  s.family = static_cast<PulseFamily>(rng() % 5);
  const double omega = log_uniform(rng, 0.1, 10.0);
  const double duration = 2.0 + 38.0 * rng.uniform_open();
  s.omega_max = omega;
  s.duration = duration;
  s.ramp_time = duration * rng.uniform_open();
  s.center = 0.5 * duration;
  s.width = duration / 6.0;
  s.knots = {{0.0, 0.0},
             {duration / 3.0, omega * rng.uniform_open()},
             {2.0 * duration / 3.0, omega * rng.uniform_open()},
             {duration, 0.0}};
  return d;
}

std::vector<DrawOutcome> run_scan(std::uint64_t count, std::uint64_t seed,
                                  const DrawOptions& options, std::size_t workers) {
  std::vector<DrawOutcome> out(count);
  parallel_for(count, workers == 0 ? worker_count() : workers, [&](std::size_t i) {
    DrawOutcome& o = out[i];
    o.draw = random_draw(seed, i, options);
    try {
      const auto rates = validate(o.draw.rates);
      const DrivePulse pulse(o.draw.pulse);
      o.amplitudes = evolve_amplitudes(rates, pulse, {}, {}, 0);
      o.master = evolve_master(rates, pulse, {}, {}, 0);
      o.ps = o.master->ps_total;
      o.ps_upper = ps_upper(rates);
      o.p_rep = repump_contribution(*o.master, *o.amplitudes);
      o.prep_upper = prep_upper(rates);
    } catch (const Error& e) {
      o.error = e.what();
    }
  });
  return out;
}

}  // namespace cqed::cli
