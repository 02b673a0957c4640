#include "cqed/master.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

#include "cqed/errors.hpp"
#include "integrator.hpp"
#include "run_support.hpp"

namespace cqed {
namespace {

constexpr std::size_t kDim = 16;
using State = detail::State<kDim>;

enum Slot : std::size_t {
  kRhoUU, kRhoEE, kRhoGG,
  kReUE, kImUE, kReUG, kImUG, kReEG, kImEG,
  kPg0, kPo0,
  kFex, kFin, kFg, kFo, kFu,
};

Matrix3c unpack(const State& x) {
  using C = std::complex<double>;
  Matrix3c rho;
  const C ue(x[kReUE], x[kImUE]);
  const C ug(x[kReUG], x[kImUG]);
  const C eg(x[kReEG], x[kImEG]);
  rho << x[kRhoUU], ue, ug,
         std::conj(ue), x[kRhoEE], eg,
         std::conj(ug), std::conj(eg), x[kRhoGG];
  return rho;
}

FluxLedger fluxes_of(const State& x) {
  return FluxLedger{x[kFex], x[kFin], x[kFg], x[kFo], x[kFu]};
}

double excited_population(const State& x) { return x[kRhoEE] + x[kRhoGG]; }

double trace_error(const State& x) {
  return std::abs(x[kRhoUU] + x[kRhoEE] + x[kRhoGG] + x[kPg0] + x[kPo0] - 1.0);
}

struct MasterRhs {
  const ValidatedRateSet& rates;
  const DrivePulse& pulse;

  void operator()(std::size_t segment, double t, const State& x, State& dxdt) const {
    using namespace std::complex_literals;
    const double omega = pulse.omega_on_segment(segment, t);
    const double delta_u = rates.delta_u() + pulse.delta_u_shift(t);
    const Matrix3c h = effective_hamiltonian(rates, omega, delta_u);
    const Matrix3c rho = unpack(x);
    const Matrix3c hr = h * rho;
    // -i (H rho - rho H^dagger); rho is Hermitian so rho H^dagger = (H rho)^dagger.
    const Matrix3c d = -1i * (hr - hr.adjoint());

    const double two_gamma_ee = 2.0 * rates.gamma() * x[kRhoEE];
    const double two_gg = 2.0 * x[kRhoGG];
    dxdt[kRhoUU] = d(kU0, kU0).real() + rates.r_u() * two_gamma_ee;
    dxdt[kRhoEE] = d(kE0, kE0).real();
    dxdt[kRhoGG] = d(kG1, kG1).real();
    dxdt[kReUE] = d(kU0, kE0).real();
    dxdt[kImUE] = d(kU0, kE0).imag();
    dxdt[kReUG] = d(kU0, kG1).real();
    dxdt[kImUG] = d(kU0, kG1).imag();
    dxdt[kReEG] = d(kE0, kG1).real();
    dxdt[kImEG] = d(kE0, kG1).imag();
    dxdt[kFex] = rates.kappa_ex() * two_gg;
    dxdt[kFin] = rates.kappa_in() * two_gg;
    dxdt[kFg] = rates.r_g() * two_gamma_ee;
    dxdt[kFo] = rates.r_o() * two_gamma_ee;
    dxdt[kFu] = rates.r_u() * two_gamma_ee;
    dxdt[kPg0] = dxdt[kFex] + dxdt[kFin] + dxdt[kFg];
    dxdt[kPo0] = dxdt[kFo];
  }
};

MasterSample sample_of(double t, const State& x) {
  MasterSample s;
  s.t = t;
  s.rho = unpack(x);
  s.p_g0 = x[kPg0];
  s.p_o0 = x[kPo0];
  s.flux = fluxes_of(x);
  s.min_eigenvalue = min_eigenvalue(s.rho);
  return s;
}

struct RawRun {
  State x{};
  detail::IntegrationSummary summary;
};

RawRun run_from(const ValidatedRateSet& rates, const DrivePulse& pulse, double t_start,
                const StopRule& stop, const ToleranceSpec& tol) {
  detail::check_tolerances(stop, tol);
  const double t_max = resolve_t_max(stop, rates, pulse);
  if (!(t_start >= 0.0 && t_start < t_max)) throw InvalidParameter("t_start", "outside [0, t_max)");
  RawRun run;
  run.x[kRhoUU] = 1.0;
  auto stop_visit = [&](const auto& step) {
    if (step.t1() < pulse.duration()) return false;
    return excited_population(step.at(step.t1())) < stop.eps_stop;
  };
  run.summary = detail::integrate_piecewise<kDim>(pulse, t_start, run.x, t_max, tol,
                                                  detail::initial_step(rates, pulse),
                                                  MasterRhs{rates, pulse}, stop_visit);
  if (!run.summary.stopped) {
    throw NotConverged("master run reached t_max=" + std::to_string(t_max) +
                       " with excited population " + std::to_string(excited_population(run.x)));
  }
  return run;
}

}  // namespace

double min_eigenvalue(const Matrix3c& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix3c> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

MasterResult evolve_master(const ValidatedRateSet& rates, const DrivePulse& pulse,
                           const StopRule& stop, const ToleranceSpec& tol,
                           std::size_t output_points) {
  const RawRun run = run_from(rates, pulse, 0.0, stop, tol);
  const State& x = run.x;

  MasterResult out;
  out.rho_block = unpack(x);
  out.p_g0 = x[kPg0];
  out.p_o0 = x[kPo0];
  out.flux = fluxes_of(x);
  out.ps_total = out.flux.F_ex;
  out.t_end = run.summary.t_end;
  out.steps = run.summary.steps;
  out.fingerprint = run_fingerprint(rates, pulse, stop, tol);
  out.max_trace_error = trace_error(x);
  out.min_eigenvalue = min_eigenvalue(out.rho_block);

  if (output_points == 0) return out;

  const auto grid = detail::uniform_grid(out.t_end, output_points);
  out.samples.reserve(grid.size());
  std::size_t next = 0;
  auto record = [&](double t, const State& s) {
    out.samples.push_back(sample_of(t, s));
    out.max_trace_error = std::max(out.max_trace_error, trace_error(s));
    out.min_eigenvalue = std::min(out.min_eigenvalue, out.samples.back().min_eigenvalue);
  };
  State y{};
  y[kRhoUU] = 1.0;
  record(grid[next++], y);
  auto sample_visit = [&](const auto& step) {
    while (next < grid.size() && grid[next] <= step.t1()) {
      record(grid[next], step.at(grid[next]));
      ++next;
    }
    return false;
  };
  detail::integrate_piecewise<kDim>(pulse, 0.0, y, out.t_end, tol,
                                    detail::initial_step(rates, pulse), MasterRhs{rates, pulse},
                                    sample_visit);
  while (next < grid.size()) record(grid[next++], y);
  return out;
}

double restart_success_probability(const ValidatedRateSet& rates, const DrivePulse& pulse,
                                   double t_start, const StopRule& stop,
                                   const ToleranceSpec& tol) {
  return run_from(rates, pulse, t_start, stop, tol).x[kFex];
}

double repump_contribution(const MasterResult& master, const AmplitudeResult& amplitudes) {
  if (master.fingerprint != amplitudes.fingerprint) {
    throw MismatchedInputs("master and amplitude runs were computed from different inputs");
  }
  // Without a repump flux every photon came from the first excitation.
  if (master.flux.F_u == 0.0) return 0.0;
  const double p_rep = master.ps_total - amplitudes.ps_norep;
  if (p_rep < 0.0 && p_rep >= -1e-9) return 0.0;
  return p_rep;
}

}  // namespace cqed
