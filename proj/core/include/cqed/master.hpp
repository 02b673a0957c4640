#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cqed/amplitudes.hpp"
#include "cqed/model.hpp"
#include "cqed/pulse.hpp"
#include "cqed/solver_options.hpp"

namespace cqed {

// Cumulative jump probabilities per dissipation channel.
struct FluxLedger {
  double F_ex = 0.0;  // int 2 kappa_ex rho_g1g1 dt  (success)
  double F_in = 0.0;  // int 2 kappa_in rho_g1g1 dt
  double F_g = 0.0;   // int 2 gamma r_g rho_ee dt
  double F_o = 0.0;   // int 2 gamma r_o rho_ee dt
  double F_u = 0.0;   // int 2 gamma r_u rho_ee dt  (repump, re-enters |u,0>)
};

struct MasterSample {
  double t = 0.0;
  Matrix3c rho = Matrix3c::Zero();
  double p_g0 = 0.0;
  double p_o0 = 0.0;
  FluxLedger flux;
  double min_eigenvalue = 0.0;
};

struct MasterResult {
  // Density block over (|u,0>, |e,0>, |g,1>) at termination.
  Matrix3c rho_block = Matrix3c::Zero();
  double p_g0 = 0.0;
  double p_o0 = 0.0;
  FluxLedger flux;
  double ps_total = 0.0;  // == flux.F_ex
  double t_end = 0.0;
  std::size_t steps = 0;
  std::uint64_t fingerprint = 0;

  std::vector<MasterSample> samples;  // uniform grid on [0, t_end]
  double max_trace_error = 0.0;       // over samples and the final state
  double min_eigenvalue = 0.0;        // over samples and the final state
};

// Integrates the full master equation on the reachable space
// {|u,0>, |e,0>, |g,1>, |g,0>, |o,0>}: the 3x3 coherent block evolves under
// the effective Hamiltonian, J_u reinjects 2 gamma r_u rho_ee into rho_uu, and
// the absorbing populations and channel fluxes are carried as quadratures.
// 16 real ODE components in total.
//
// Throws ToleranceNotMet and NotConverged like evolve_amplitudes.
MasterResult evolve_master(const ValidatedRateSet& rates, const DrivePulse& pulse,
                           const StopRule& stop = {}, const ToleranceSpec& tol = {},
                           std::size_t output_points = kDefaultOutputPoints);

// Success probability when the system is (re)prepared in |u,0> at t_start
// rather than t = 0. This is <g,0|V_c(T, t_start) rho_0|g,0> restricted to the
// external channel and lets callers inspect how restarts fare under a given
// pulse.
double restart_success_probability(const ValidatedRateSet& rates, const DrivePulse& pulse,
                                   double t_start, const StopRule& stop = {},
                                   const ToleranceSpec& tol = {});

// Photons emitted after at least one repump: master ps_total minus the
// no-repump amplitude success probability. Exactly zero when no repump flux
// occurred; values in [-1e-9, 0) are clamped to zero. Throws MismatchedInputs if the two runs used different inputs.
double repump_contribution(const MasterResult& master, const AmplitudeResult& amplitudes);

// Smallest eigenvalue of a Hermitian 3x3 block.
double min_eigenvalue(const Matrix3c& rho);

}  // namespace cqed
