#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqed/model.hpp"
#include "cqed/pulse.hpp"
#include "cqed/solver_options.hpp"

namespace cqed {

enum class SolverKind { kAmplitudes, kMaster, kMonteCarlo };

std::string_view to_string(SolverKind s);

// Objective used by the optimizers: the simulated success probability.
// include_repumped = true uses the master equation (photons emitted after a
// repump count); false uses the no-repump amplitude run, which is the
// relevant figure when delayed photons are useless (e.g. photonic qubits).
struct ObjectiveOptions {
  StopRule stop;
  ToleranceSpec tol;
  bool include_repumped = true;
};

struct TracePoint {
  std::vector<double> x;
  double value = 0.0;
};

struct OptimizationOutcome {
  std::vector<double> best;
  double best_ps = 0.0;
  std::size_t evaluations = 0;  // distinct solver calls (cache hits excluded)
  bool converged = false;
  std::vector<TracePoint> trace;  // raw, in evaluation order
  std::string message;
};

// Sets a named RateSet or PulseShape field. Recognized names: g, kappa_in,
// kappa_ex, gamma, r_u, r_g, r_o, delta_e, delta_u, omega_max, duration,
// ramp_time, center, width, chirp and knot<i> (omega of knot i). Returns
// false for an unknown name.
bool set_parameter(RateSet& rates, PulseShape& pulse, std::string_view name, double value);
std::optional<double> get_parameter(const RateSet& rates, const PulseShape& pulse,
                                    std::string_view name);
bool is_parameter_name(std::string_view name);

// Golden-section maximization of the simulated success probability over
// kappa_ex in [lo, hi], stopping when the bracket is narrower than tol.
// If either end of the bracket beats the interior optimum the result is the
// best point seen and converged is false.
OptimizationOutcome maximize_over_kappa_ex(const RateSet& base, const DrivePulse& pulse, double lo,
                                           double hi, double tol,
                                           const ObjectiveOptions& options = {});

struct FreeParameter {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
};

// A pulse family with 1-6 free parameters; `base` supplies the fixed fields
// and the first starting point.
struct PulseFamilySpec {
  PulseShape base;
  std::vector<FreeParameter> free;
};

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double value_spread = 1e-6;
  std::size_t restarts = 2;
};

// Nelder-Mead over the free pulse parameters (box constraints by projection),
// first from the base shape, then from seeded random restarts. Stops after
// `budget` distinct evaluations, in which case converged is false.
// Throws BoundViolation if any evaluation exceeds ps_upper + 1e-6.
OptimizationOutcome optimize_pulse(const ValidatedRateSet& rates, const PulseFamilySpec& family,
                                   std::size_t budget, std::uint64_t seed,
                                   const ObjectiveOptions& options = {},
                                   const NelderMeadOptions& nm = {});

}  // namespace cqed
