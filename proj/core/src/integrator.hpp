#pragma once

// Piecewise-smooth adaptive integration on top of the Boost.Odeint
// Dormand-Prince 5(4) dense-output stepper.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "cqed/errors.hpp"
#include "cqed/pulse.hpp"
#include "cqed/solver_options.hpp"

namespace cqed::detail {

template <std::size_t N>
using State = std::array<double, N>;

// One accepted step, restricted to the part that lies inside the current
// smooth segment of the drive.
template <class Dense, std::size_t N>
class StepView {
 public:
  StepView(const Dense& dense, double t0, double t1) : dense_(dense), t0_(t0), t1_(t1) {}
  double t0() const { return t0_; }
  double t1() const { return t1_; }
  State<N> at(double t) const {
    State<N> x;
    dense_.calc_state(t, x);
    return x;
  }

 private:
  const Dense& dense_;
  double t0_;
  double t1_;
};

struct IntegrationSummary {
  double t_end = 0.0;
  bool stopped = false;  // visitor requested the stop; false means t_max reached
  std::size_t steps = 0;
};

inline constexpr std::size_t kMaxSteps = 50'000'000;

// Integrates x from t0 to at most t_max. rhs(segment, t, x, dxdt) must be smooth
// in t for a fixed segment index. visit(step) is called for every accepted
// step clipped to its segment and returns true to stop at step.t1(); x then
// holds the state at that time.
template <std::size_t N, class Rhs, class Visit>
IntegrationSummary integrate_piecewise(const DrivePulse& pulse, double t0, State<N>& x,
                                       double t_max, const ToleranceSpec& tol, double dt0,
                                       Rhs&& rhs, Visit&& visit) {
  namespace odeint = boost::numeric::odeint;
  using Stepper = odeint::runge_kutta_dopri5<State<N>>;
  auto dense = odeint::make_dense_output(tol.atol, tol.rtol, Stepper());
  using Dense = decltype(dense);

  IntegrationSummary summary;
  double t = t0;
  double dt = dt0;
  std::size_t segment = pulse.segment_of(t0);

  while (t < t_max) {
    const double seg_end = std::min(pulse.segment_end(segment), t_max);
    auto system = [&rhs, segment](const State<N>& s, State<N>& d, double tt) {
      rhs(segment, tt, s, d);
    };
    dense.initialize(x, t, std::min(dt, seg_end - t));
    bool segment_done = false;
    while (!segment_done) {
      try {
        dense.do_step(system);
      } catch (const odeint::odeint_error& e) {
        throw ToleranceNotMet(std::string("step size control failed at t=") +
                              std::to_string(dense.current_time()) + ": " + e.what());
      }
      ++summary.steps;
      const double step_start = dense.previous_time();
      const double step_end = std::min(dense.current_time(), seg_end);
      dt = dense.current_time_step();
      if (!(dt > 1e-14 * std::max(1.0, std::abs(step_end))) || summary.steps > kMaxSteps) {
        throw ToleranceNotMet("step size underflow at t=" + std::to_string(step_end));
      }
      for (double v : dense.current_state()) {
        if (!std::isfinite(v)) throw ToleranceNotMet("non-finite state at t=" + std::to_string(step_end));
      }
      const StepView<Dense, N> view(dense, step_start, step_end);
      const bool stop = visit(view);
      segment_done = dense.current_time() >= seg_end;
      if (stop || segment_done) {
        if (dense.current_time() == step_end) {
          x = dense.current_state();
        } else {
          dense.calc_state(step_end, x);
        }
        t = step_end;
      }
      if (stop) {
        summary.t_end = t;
        summary.stopped = true;
        return summary;
      }
    }
    if (t >= pulse.segment_end(segment)) ++segment;
  }
  summary.t_end = t;
  return summary;
}

}  // namespace cqed::detail
