#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cqed/model.hpp"
#include "cqed/pulse.hpp"
#include "cqed/solver_options.hpp"

namespace cqed {

enum class Channel { kExternal, kInternal, kSpontG, kSpontO, kUnterminated };

struct OutcomeCounts {
  std::uint64_t external = 0;
  std::uint64_t internal = 0;
  std::uint64_t spont_g = 0;
  std::uint64_t spont_o = 0;
  // No terminal jump: the trajectory finished in |u,0> (drive over, excited
  // manifold empty) or hit t_max. The latter are also counted in `unresolved`.
  std::uint64_t unterminated = 0;

  std::uint64_t total() const { return external + internal + spont_g + spont_o + unterminated; }
  bool operator==(const OutcomeCounts&) const = default;
};

struct TrajectoryStats {
  std::uint64_t n_samples = 0;
  double p_success_hat = 0.0;
  double stderr_ = 0.0;  // sqrt(p (1 - p) / n)
  OutcomeCounts outcome_counts;
  // repump_histogram[k] = trajectories with exactly k J_u jumps.
  std::vector<std::uint64_t> repump_histogram;
  std::uint64_t unresolved = 0;
  double mean_repumps = 0.0;
  double repump_stderr = 0.0;
  // External emissions that followed at least one repump, as a fraction of n.
  double p_rep_hat = 0.0;

  double standard_error() const { return stderr_; }
  bool operator==(const TrajectoryStats&) const = default;
};

struct TrajectoryOptions {
  StopRule stop;
  ToleranceSpec tol;
  std::size_t workers = 0;  // 0 = worker_count()
};

// Quantum-trajectory unraveling of the master equation. Each trajectory
// follows the no-jump evolution from |u,0>, jumps when the squared norm falls
// below a uniform variate (crossing located by bisection on the dense output
// to 1e-10 relative in time), and picks a channel with probability
// proportional to its instantaneous rate. J_u restarts from |u,0>; every other
// channel terminates.
//
// Trajectory i draws from SplitMix64::stream(seed, i), so results are
// bit-identical for a given (seed, n_samples) regardless of worker count.
//
// Throws NotConverged if 1e-3 or more of the trajectories hit t_max with
// excited population above eps_stop.
TrajectoryStats run_trajectories(const ValidatedRateSet& rates, const DrivePulse& pulse,
                                 std::uint64_t n_samples, std::uint64_t seed,
                                 const TrajectoryOptions& options = {});

}  // namespace cqed
