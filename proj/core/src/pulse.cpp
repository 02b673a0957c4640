#include "cqed/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "cqed/errors.hpp"
#include "cqed/model.hpp"

namespace cqed {
namespace {

double sin2(double x) {
  const double s = std::sin(x);
  return s * s;
}

void require(bool ok, const char* subject, const char* what) {
  if (!ok) throw InvalidParameter(subject, what);
}

}  // namespace

std::string_view to_string(PulseFamily f) {
  switch (f) {
    case PulseFamily::kConstant: return "constant";
    case PulseFamily::kSin2Ramp: return "sin2_ramp";
    case PulseFamily::kGaussian: return "gaussian";
    case PulseFamily::kPiecewiseLinear: return "piecewise_linear";
    case PulseFamily::kVstirapSin: return "vstirap_sin";
  }
  return "unknown";
}

std::optional<PulseFamily> pulse_family_from_string(std::string_view name) {
  for (auto f : {PulseFamily::kConstant, PulseFamily::kSin2Ramp, PulseFamily::kGaussian,
                 PulseFamily::kPiecewiseLinear, PulseFamily::kVstirapSin}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

DrivePulse::DrivePulse(PulseShape shape) : shape_(std::move(shape)) {
  auto& s = shape_;
  require(std::isfinite(s.chirp), "chirp", "must be finite");
  if (s.family == PulseFamily::kPiecewiseLinear) {
    require(s.knots.size() >= 2, "knots", "need at least two knots");
    require(s.knots.front().t >= 0.0, "knots", "knot times must be >= 0");
    double peak = 0.0;
    for (std::size_t i = 0; i < s.knots.size(); ++i) {
      require(std::isfinite(s.knots[i].t) && std::isfinite(s.knots[i].omega), "knots",
              "knot values must be finite");
      require(s.knots[i].omega >= 0.0, "knots", "drive amplitude must be >= 0");
      if (i > 0) require(s.knots[i].t > s.knots[i - 1].t, "knots", "knot times must increase");
      peak = std::max(peak, s.knots[i].omega);
    }
    s.duration = s.knots.back().t;
    s.omega_max = peak;
    require(s.duration > 0.0, "duration", "must be > 0");
    if (s.knots.front().t > 0.0) breaks_.push_back(0.0);
    for (const auto& k : s.knots) breaks_.push_back(k.t);
    return;
  }

  require(std::isfinite(s.duration) && s.duration > 0.0, "duration", "must be > 0");
  require(std::isfinite(s.omega_max) && s.omega_max >= 0.0, "omega_max", "must be >= 0");
  breaks_ = {0.0};
  switch (s.family) {
    case PulseFamily::kSin2Ramp:
      if (s.ramp_time <= 0.0) s.ramp_time = s.duration;
      require(std::isfinite(s.ramp_time) && s.ramp_time <= s.duration, "ramp_time",
              "must be <= duration");
      if (s.ramp_time < s.duration) breaks_.push_back(s.ramp_time);
      break;
    case PulseFamily::kGaussian:
      require(std::isfinite(s.width) && s.width > 0.0, "width", "must be > 0");
      require(std::isfinite(s.center), "center", "must be finite");
      break;
    default:
      break;
  }
  breaks_.push_back(s.duration);
}

namespace {

PulseShape basic_shape(PulseFamily family, double omega_max, double duration) {
  PulseShape s;
  s.family = family;
  s.omega_max = omega_max;
  s.duration = duration;
  return s;
}

}  // namespace

DrivePulse DrivePulse::constant(double omega_max, double duration) {
  return DrivePulse(basic_shape(PulseFamily::kConstant, omega_max, duration));
}

DrivePulse DrivePulse::sin2_ramp(double omega_max, double duration, double ramp_time) {
  PulseShape s = basic_shape(PulseFamily::kSin2Ramp, omega_max, duration);
  s.ramp_time = ramp_time;
  return DrivePulse(std::move(s));
}

DrivePulse DrivePulse::gaussian(double omega_max, double duration, double center, double width) {
  PulseShape s = basic_shape(PulseFamily::kGaussian, omega_max, duration);
  s.center = center;
  s.width = width;
  return DrivePulse(std::move(s));
}

DrivePulse DrivePulse::piecewise_linear(std::vector<Knot> knots) {
  PulseShape s;
  s.family = PulseFamily::kPiecewiseLinear;
  s.knots = std::move(knots);
  return DrivePulse(std::move(s));
}

DrivePulse DrivePulse::vstirap_sin(double omega_max, double duration) {
  return DrivePulse(basic_shape(PulseFamily::kVstirapSin, omega_max, duration));
}

DrivePulse DrivePulse::with_chirp(double chirp) const {
  PulseShape s = shape_;
  s.chirp = chirp;
  return DrivePulse(std::move(s));
}

std::size_t DrivePulse::segment_of(double t) const {
  if (t >= shape_.duration) return breaks_.size() - 1;
  if (t < 0.0) return 0;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  return static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

double DrivePulse::segment_end(std::size_t segment) const {
  if (segment + 1 >= breaks_.size()) return std::numeric_limits<double>::infinity();
  return breaks_[segment + 1];
}

double DrivePulse::omega_on_segment(std::size_t segment, double t) const {
  const auto& s = shape_;
  if (segment + 1 >= breaks_.size()) return 0.0;
  switch (s.family) {
    case PulseFamily::kConstant:
      return s.omega_max;
    case PulseFamily::kSin2Ramp:
      if (segment == 0) return s.omega_max * sin2(constants::kPi * t / (2.0 * s.ramp_time));
      return s.omega_max;
    case PulseFamily::kGaussian: {
      const double x = (t - s.center) / s.width;
      return s.omega_max * std::exp(-0.5 * x * x);
    }
    case PulseFamily::kVstirapSin:
      return s.omega_max * sin2(constants::kPi * t / s.duration);
    case PulseFamily::kPiecewiseLinear: {
      const double t0 = breaks_[segment];
      const double t1 = breaks_[segment + 1];
      // The lead-in segment before a late first knot carries zero drive.
      if (t1 <= s.knots.front().t) return 0.0;
      auto it = std::find_if(s.knots.begin(), s.knots.end(),
                             [t0](const Knot& k) { return k.t == t0; });
      const Knot& a = *it;
      const Knot& b = *(it + 1);
      return a.omega + (b.omega - a.omega) * (t - a.t) / (b.t - a.t);
    }
  }
  return 0.0;
}

double DrivePulse::omega(double t) const {
  if (t < 0.0) return 0.0;
  return std::max(0.0, omega_on_segment(segment_of(t), t));
}

bool DrivePulse::is_identically_zero() const {
  if (shape_.family == PulseFamily::kPiecewiseLinear) {
    return std::all_of(shape_.knots.begin(), shape_.knots.end(),
                       [](const Knot& k) { return k.omega == 0.0; });
  }
  return shape_.omega_max == 0.0;
}

}  // namespace cqed
