#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "cqed/model.hpp"
#include "cqed/pulse.hpp"
#include "cqed/solver_options.hpp"

namespace cqed {

// Conditioned no-jump evolution from |u,0>, with the time integrals that
// feed the efficiency bounds.
struct AmplitudeResult {
  // Uniform output grid on [0, t_end]; empty when no samples were requested.
  std::vector<double> times;
  std::vector<std::complex<double>> alpha_u;
  std::vector<std::complex<double>> alpha_e;
  std::vector<std::complex<double>> alpha_g;
  std::vector<double> emission_profile;  // 2 kappa_ex |alpha_g(t)|^2

  Vector3c final_state = Vector3c::Zero();
  double I_g = 0.0;        // int |alpha_g|^2 dt
  double I_e = 0.0;        // int |alpha_e|^2 dt
  double I_g_prime = 0.0;  // int |d(alpha_g)/dt|^2 dt
  double ps_norep = 0.0;   // 2 kappa_ex I_g
  double final_norm = 0.0; // <psi(T)|psi(T)>
  double t_end = 0.0;
  std::size_t steps = 0;
  std::uint64_t fingerprint = 0;
};

double resolve_t_max(const StopRule& stop, const ValidatedRateSet& rates, const DrivePulse& pulse);

std::uint64_t run_fingerprint(const ValidatedRateSet& rates, const DrivePulse& pulse,
                              const StopRule& stop, const ToleranceSpec& tol);

// Integrates the three amplitude equations from alpha_u = 1 with I_g, I_e and
// I'_g carried as extra ODE components. I'_g uses the exact derivative
// -kappa*alpha_g - g*alpha_e rather than a finite difference.
//
// Throws ToleranceNotMet if step control fails and NotConverged if t_max is
// reached while |alpha_e|^2 + |alpha_g|^2 >= stop.eps_stop.
AmplitudeResult evolve_amplitudes(const ValidatedRateSet& rates, const DrivePulse& pulse,
                                  const StopRule& stop = {}, const ToleranceSpec& tol = {},
                                  std::size_t output_points = kDefaultOutputPoints);

// I'_g / (kappa * C); small values mean the slow-variation regime where the
// success-probability bound is tight.
double adiabaticity(const AmplitudeResult& result, const ValidatedRateSet& rates);

}  // namespace cqed
