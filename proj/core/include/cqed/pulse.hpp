#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cqed {

enum class PulseFamily { kConstant, kSin2Ramp, kGaussian, kPiecewiseLinear, kVstirapSin };

std::string_view to_string(PulseFamily f);
std::optional<PulseFamily> pulse_family_from_string(std::string_view name);

struct Knot {
  double t = 0.0;
  double omega = 0.0;
  bool operator==(const Knot&) const = default;
};

// Plain parameter record for a drive pulse. Fields that a family does not use
// are ignored. All families switch the drive off for t >= duration.
//
//   constant          omega_max on [0, duration)
//   sin2_ramp         omega_max * sin^2(pi t / (2 ramp_time)) up to ramp_time,
//                     then omega_max until duration; ramp_time <= 0 means
//                     ramp_time = duration
//   gaussian          omega_max * exp(-(t - center)^2 / (2 width^2))
//   piecewise_linear  linear interpolation through knots (t, omega); zero before
//                     the first knot; duration is the last knot time
//   vstirap_sin       omega_max * sin^2(pi t / duration), a single smooth bump
//
// chirp adds a linear two-photon detuning ramp delta_u(t) = delta_u + chirp*t.
struct PulseShape {
  PulseFamily family = PulseFamily::kConstant;
  double omega_max = 0.0;
  double duration = 1.0;
  double ramp_time = 0.0;
  double center = 0.0;
  double width = 1.0;
  std::vector<Knot> knots;
  double chirp = 0.0;

  bool operator==(const PulseShape&) const = default;
};

// Validated, immutable drive pulse Omega(t) >= 0.
//
// The pulse is split into smooth segments at its breakpoints. omega_on_segment
// evaluates the analytic continuation of one segment's formula, so an
// integrator step that overshoots a breakpoint still sees a smooth right-hand
// side and its dense output is exact up to that breakpoint.
class DrivePulse {
 public:
  // Throws InvalidParameter on any violated pulse invariant.
  explicit DrivePulse(PulseShape shape);

  static DrivePulse constant(double omega_max, double duration);
  static DrivePulse sin2_ramp(double omega_max, double duration, double ramp_time = 0.0);
  static DrivePulse gaussian(double omega_max, double duration, double center, double width);
  static DrivePulse piecewise_linear(std::vector<Knot> knots);
  static DrivePulse vstirap_sin(double omega_max, double duration);
  DrivePulse with_chirp(double chirp) const;

  const PulseShape& shape() const noexcept { return shape_; }
  PulseFamily family() const noexcept { return shape_.family; }
  double duration() const noexcept { return shape_.duration; }
  double omega_max() const noexcept { return shape_.omega_max; }
  double chirp() const noexcept { return shape_.chirp; }

  double omega(double t) const;
  double delta_u_shift(double t) const noexcept { return shape_.chirp * t; }

  // Breakpoints b_0 = 0 < b_1 < ... < b_n = duration. Segment i spans
  // [b_i, b_{i+1}); segment n is the drive-off tail [duration, inf).
  const std::vector<double>& breakpoints() const noexcept { return breaks_; }
  std::size_t segment_count() const noexcept { return breaks_.size(); }
  std::size_t segment_of(double t) const;
  double segment_end(std::size_t segment) const;
  double omega_on_segment(std::size_t segment, double t) const;

  bool is_identically_zero() const;

 private:
  PulseShape shape_;
  std::vector<double> breaks_;
};

}  // namespace cqed
