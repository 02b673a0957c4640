#pragma once

#include <cstddef>
#include <limits>

namespace cqed {

// When a conditioned run may stop. A run stops at the first accepted step
// past the end of the drive where the excited-manifold population
// |alpha_e|^2 + |alpha_g|^2 (or rho_ee + rho_g1g1) is below eps_stop.
// t_max defaults to duration + 20 / min(gamma, kappa) when left NaN.
struct StopRule {
  double t_max = std::numeric_limits<double>::quiet_NaN();
  double eps_stop = 1e-10;
};

// Local error control of the embedded Runge-Kutta pair.
struct ToleranceSpec {
  double rtol = 1e-9;
  double atol = 1e-12;
};

inline constexpr std::size_t kDefaultOutputPoints = 2048;

}  // namespace cqed
