#include "cqed/amplitudes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cqed/bounds.hpp"
#include "cqed/errors.hpp"
#include "integrator.hpp"
#include "run_support.hpp"

namespace cqed {
namespace {

constexpr std::size_t kDim = 9;
using State = detail::State<kDim>;

enum Slot : std::size_t { kReU, kImU, kReE, kImE, kReG, kImG, kIg, kIe, kIgPrime };

Vector3c amplitudes_of(const State& x) {
  return Vector3c(std::complex<double>(x[kReU], x[kImU]), std::complex<double>(x[kReE], x[kImE]),
                  std::complex<double>(x[kReG], x[kImG]));
}

double excited_population(const State& x) {
  return x[kReE] * x[kReE] + x[kImE] * x[kImE] + x[kReG] * x[kReG] + x[kImG] * x[kImG];
}

struct AmplitudeRhs {
  const ValidatedRateSet& rates;
  const DrivePulse& pulse;

  void operator()(std::size_t segment, double t, const State& x, State& dxdt) const {
    const double omega = pulse.omega_on_segment(segment, t);
    const double delta_u = rates.delta_u() + pulse.delta_u_shift(t);
    const Vector3c d = amplitude_derivative(rates, omega, delta_u, amplitudes_of(x));
    dxdt[kReU] = d[kU0].real();
    dxdt[kImU] = d[kU0].imag();
    dxdt[kReE] = d[kE0].real();
    dxdt[kImE] = d[kE0].imag();
    dxdt[kReG] = d[kG1].real();
    dxdt[kImG] = d[kG1].imag();
    dxdt[kIg] = x[kReG] * x[kReG] + x[kImG] * x[kImG];
    dxdt[kIe] = x[kReE] * x[kReE] + x[kImE] * x[kImE];
    dxdt[kIgPrime] = std::norm(d[kG1]);
  }
};

}  // namespace

double resolve_t_max(const StopRule& stop, const ValidatedRateSet& rates, const DrivePulse& pulse) {
  if (std::isnan(stop.t_max)) {
    return pulse.duration() + 20.0 / std::min(rates.gamma(), rates.kappa());
  }
  if (!(stop.t_max > 0.0)) throw InvalidParameter("t_max", "must be > 0");
  return stop.t_max;
}

std::uint64_t run_fingerprint(const ValidatedRateSet& rates, const DrivePulse& pulse,
                              const StopRule& stop, const ToleranceSpec& tol) {
  const RateSet& r = rates.raw();
  Fingerprint fp;
  fp.add(r.g).add(r.kappa_in).add(r.kappa_ex).add(r.gamma);
  fp.add(r.r_u).add(r.r_g).add(r.r_o).add(r.delta_e).add(r.delta_u);
  const PulseShape& s = pulse.shape();
  fp.add(static_cast<std::uint64_t>(s.family)).add(s.omega_max).add(s.duration);
  fp.add(s.ramp_time).add(s.center).add(s.width).add(s.chirp);
  for (const auto& k : s.knots) fp.add(k.t).add(k.omega);
  fp.add(resolve_t_max(stop, rates, pulse)).add(stop.eps_stop).add(tol.rtol).add(tol.atol);
  return fp.value();
}

AmplitudeResult evolve_amplitudes(const ValidatedRateSet& rates, const DrivePulse& pulse,
                                  const StopRule& stop, const ToleranceSpec& tol,
                                  std::size_t output_points) {
  detail::check_tolerances(stop, tol);
  const double t_max = resolve_t_max(stop, rates, pulse);
  const AmplitudeRhs rhs{rates, pulse};
  const double dt0 = detail::initial_step(rates, pulse);

  State x{};
  x[kReU] = 1.0;
  auto stop_visit = [&](const auto& step) {
    if (step.t1() < pulse.duration()) return false;
    return excited_population(step.at(step.t1())) < stop.eps_stop;
  };
  const auto summary = detail::integrate_piecewise<kDim>(pulse, 0.0, x, t_max, tol, dt0, rhs,
                                                         stop_visit);
  if (!summary.stopped) {
    throw NotConverged("amplitude run reached t_max=" + std::to_string(t_max) +
                       " with excited population " + std::to_string(excited_population(x)));
  }

  AmplitudeResult out;
  out.final_state = amplitudes_of(x);
  out.I_g = x[kIg];
  out.I_e = x[kIe];
  out.I_g_prime = x[kIgPrime];
  out.ps_norep = 2.0 * rates.kappa_ex() * out.I_g;
  out.final_norm = out.final_state.squaredNorm();
  out.t_end = summary.t_end;
  out.steps = summary.steps;
  out.fingerprint = run_fingerprint(rates, pulse, stop, tol);

  if (output_points == 0) return out;

  // Second, identical pass that samples the dense output on a uniform grid
  // spanning the now-known run length.
  const auto grid = detail::uniform_grid(out.t_end, output_points);
  std::size_t next = 0;
  auto record = [&](double t, const State& s) {
    const Vector3c a = amplitudes_of(s);
    out.times.push_back(t);
    out.alpha_u.push_back(a[kU0]);
    out.alpha_e.push_back(a[kE0]);
    out.alpha_g.push_back(a[kG1]);
    out.emission_profile.push_back(2.0 * rates.kappa_ex() * std::norm(a[kG1]));
  };
  State y{};
  y[kReU] = 1.0;
  record(grid[next++], y);
  auto sample_visit = [&](const auto& step) {
    while (next < grid.size() && grid[next] <= step.t1()) {
      record(grid[next], step.at(grid[next]));
      ++next;
    }
    return false;
  };
  detail::integrate_piecewise<kDim>(pulse, 0.0, y, out.t_end, tol, dt0, rhs, sample_visit);
  while (next < grid.size()) record(grid[next++], y);
  return out;
}

double adiabaticity(const AmplitudeResult& result, const ValidatedRateSet& rates) {
  const double c = cooperativities(rates).C;
  return result.I_g_prime / (rates.kappa() * c);
}

}  // namespace cqed
