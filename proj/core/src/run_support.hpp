#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cqed/errors.hpp"
#include "cqed/model.hpp"
#include "cqed/pulse.hpp"
#include "cqed/solver_options.hpp"

namespace cqed::detail {

inline void check_tolerances(const StopRule& stop, const ToleranceSpec& tol) {
  if (!(stop.eps_stop > 0.0)) throw InvalidParameter("eps_stop", "must be > 0");
  if (!(tol.rtol > 0.0)) throw InvalidParameter("rtol", "must be > 0");
  if (!(tol.atol > 0.0)) throw InvalidParameter("atol", "must be > 0");
}

// First trial step, a small fraction of the fastest rate in the problem.
inline double initial_step(const ValidatedRateSet& r, const DrivePulse& pulse) {
  const double scale = r.g() + r.kappa() + r.gamma() + pulse.omega_max() + std::abs(r.delta_e()) +
                       std::abs(r.delta_u()) + std::abs(pulse.chirp()) * pulse.duration();
  return 1e-3 / scale;
}

inline std::vector<double> uniform_grid(double t_end, std::size_t points) {
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = t_end;
    return grid;
  }
  for (std::size_t k = 0; k < points; ++k) {
    grid[k] = t_end * static_cast<double>(k) / static_cast<double>(points - 1);
  }
  grid.back() = t_end;
  return grid;
}

}  // namespace cqed::detail
