#include "cqed/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cqed/amplitudes.hpp"
#include "cqed/errors.hpp"
#include "cqed/parallel.hpp"
#include "cqed/rng.hpp"
#include "integrator.hpp"
#include "run_support.hpp"

namespace cqed {
namespace {

constexpr std::size_t kDim = 6;
using State = detail::State<kDim>;

constexpr double kJumpTimeTolerance = 1e-10;

double norm2(const State& x) {
  return std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
}

double excited_population(const State& x) {
  return x[2] * x[2] + x[3] * x[3] + x[4] * x[4] + x[5] * x[5];
}

struct NoJumpRhs {
  const ValidatedRateSet& rates;
  const DrivePulse& pulse;

  void operator()(std::size_t segment, double t, const State& x, State& dxdt) const {
    const Vector3c a({x[0], x[1]}, {x[2], x[3]}, {x[4], x[5]});
    const Vector3c d = amplitude_derivative(rates, pulse.omega_on_segment(segment, t),
                                            rates.delta_u() + pulse.delta_u_shift(t), a);
    for (int k = 0; k < 3; ++k) {
      dxdt[2 * k] = d[k].real();
      dxdt[2 * k + 1] = d[k].imag();
    }
  }
};

enum class JumpKind { kJump, kNoJump, kUnresolved };

struct JumpEvent {
  JumpKind kind = JumpKind::kNoJump;
  double t = 0.0;
  State psi{};
};

// Propagates |u,0> from t_start without jumps and resolves, for every
// threshold r, the first time the squared norm drops to r. `order` lists
// threshold indices by decreasing threshold.
std::vector<JumpEvent> resolve_jumps(const ValidatedRateSet& rates, const DrivePulse& pulse,
                                     double t_start, const std::vector<double>& thresholds,
                                     const std::vector<std::size_t>& order,
                                     const TrajectoryOptions& opt, double t_max) {
  std::vector<JumpEvent> events(thresholds.size());
  std::size_t next = 0;
  State x{};
  x[0] = 1.0;
  double norm_prev = 1.0;
  while (next < order.size() && thresholds[order[next]] >= norm_prev) {
    events[order[next]] = JumpEvent{JumpKind::kJump, t_start, x};
    ++next;
  }
  if (next == order.size() || t_start >= t_max) {
    const JumpKind rest = t_start >= pulse.duration() ? JumpKind::kNoJump : JumpKind::kUnresolved;
    for (; next < order.size(); ++next) events[order[next]].kind = rest;
    return events;
  }

  auto visit = [&](const auto& step) {
    const State end = step.at(step.t1());
    const double norm_end = norm2(end);
    while (next < order.size() && thresholds[order[next]] >= norm_end) {
      const double r = thresholds[order[next]];
      double lo = step.t0();
      double hi = step.t1();
      // Norm is non-increasing, so bisection brackets the first crossing.
      while (hi - lo > kJumpTimeTolerance * std::max(std::abs(hi), 1e-300)) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (norm2(step.at(mid)) > r) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      events[order[next]] = JumpEvent{JumpKind::kJump, hi, step.at(hi)};
      ++next;
    }
    norm_prev = norm_end;
    if (next == order.size()) return true;
    return step.t1() >= pulse.duration() && excited_population(end) < opt.stop.eps_stop;
  };
  const auto summary = detail::integrate_piecewise<kDim>(
      pulse, t_start, x, t_max, opt.tol, detail::initial_step(rates, pulse),
      NoJumpRhs{rates, pulse}, visit);
  const bool settled = summary.stopped || excited_population(x) < opt.stop.eps_stop;
  for (; next < order.size(); ++next) {
    events[order[next]].kind = settled ? JumpKind::kNoJump : JumpKind::kUnresolved;
  }
  return events;
}

struct TrajectoryRecord {
  Channel terminal = Channel::kUnterminated;
  bool unresolved = false;
  std::uint32_t repumps = 0;
};

// Channel draw; returns kUnterminated to mean "J_u" (restart).
Channel draw_channel(const ValidatedRateSet& r, const State& psi, SplitMix64& rng) {
  const double pe = psi[2] * psi[2] + psi[3] * psi[3];
  const double pg = psi[4] * psi[4] + psi[5] * psi[5];
  const double two_gamma = 2.0 * r.gamma() * pe;
  const double weights[5] = {two_gamma * r.r_u(), two_gamma * r.r_g(), two_gamma * r.r_o(),
                             2.0 * r.kappa_ex() * pg, 2.0 * r.kappa_in() * pg};
  constexpr Channel channels[5] = {Channel::kUnterminated, Channel::kSpontG, Channel::kSpontO,
                                   Channel::kExternal, Channel::kInternal};
  const double total = weights[0] + weights[1] + weights[2] + weights[3] + weights[4];
  const double v = rng.uniform_open() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < 5; ++k) {
    if (weights[k] <= 0.0) continue;
    last_positive = k;
    acc += weights[k];
    if (v < acc) return channels[k];
  }
  return channels[last_positive];
}

}  // namespace

TrajectoryStats run_trajectories(const ValidatedRateSet& rates, const DrivePulse& pulse,
                                 std::uint64_t n_samples, std::uint64_t seed,
                                 const TrajectoryOptions& opt) {
  if (n_samples < 1) throw InvalidParameter("n_samples", "must be >= 1");
  detail::check_tolerances(opt.stop, opt.tol);
  const double t_max = resolve_t_max(opt.stop, rates, pulse);
  const std::size_t n = static_cast<std::size_t>(n_samples);

  // Every trajectory starts from |u,0> at t = 0, so the first no-jump segment
  // is shared: one integration resolves all first jump times.
  std::vector<SplitMix64> streams;
  streams.reserve(n);
  std::vector<double> first_thresholds(n);
  for (std::size_t i = 0; i < n; ++i) {
    streams.push_back(SplitMix64::stream(seed, i));
    first_thresholds[i] = streams.back().uniform_open();
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return first_thresholds[a] > first_thresholds[b];
  });
  const std::vector<JumpEvent> first =
      resolve_jumps(rates, pulse, 0.0, first_thresholds, order, opt, t_max);

  std::vector<TrajectoryRecord> records(n);
  const std::vector<std::size_t> single{0};
  auto follow = [&](std::size_t i) {
    SplitMix64& rng = streams[i];
    TrajectoryRecord& rec = records[i];
    JumpEvent ev = first[i];
    for (;;) {
      if (ev.kind != JumpKind::kJump) {
        rec.terminal = Channel::kUnterminated;
        rec.unresolved = ev.kind == JumpKind::kUnresolved;
        return;
      }
      const Channel c = draw_channel(rates, ev.psi, rng);
      if (c != Channel::kUnterminated) {
        rec.terminal = c;
        return;
      }
      ++rec.repumps;
      const std::vector<double> r{rng.uniform_open()};
      ev = resolve_jumps(rates, pulse, ev.t, r, single, opt, t_max).front();
    }
  };
  parallel_for(n, opt.workers == 0 ? worker_count() : opt.workers, follow);

  TrajectoryStats s;
  s.n_samples = n_samples;
  std::uint64_t repumped_success = 0;
  double repump_sum = 0.0;
  double repump_sq = 0.0;
  for (const auto& rec : records) {
    switch (rec.terminal) {
      case Channel::kExternal:
        ++s.outcome_counts.external;
        if (rec.repumps > 0) ++repumped_success;
        break;
      case Channel::kInternal: ++s.outcome_counts.internal; break;
      case Channel::kSpontG: ++s.outcome_counts.spont_g; break;
      case Channel::kSpontO: ++s.outcome_counts.spont_o; break;
      case Channel::kUnterminated: ++s.outcome_counts.unterminated; break;
    }
    if (rec.unresolved) ++s.unresolved;
    if (s.repump_histogram.size() <= rec.repumps) s.repump_histogram.resize(rec.repumps + 1, 0);
    ++s.repump_histogram[rec.repumps];
    repump_sum += rec.repumps;
    repump_sq += static_cast<double>(rec.repumps) * rec.repumps;
  }
  const double nd = static_cast<double>(n_samples);
  s.p_success_hat = static_cast<double>(s.outcome_counts.external) / nd;
  s.stderr_ = std::sqrt(s.p_success_hat * (1.0 - s.p_success_hat) / nd);
  s.p_rep_hat = static_cast<double>(repumped_success) / nd;
  s.mean_repumps = repump_sum / nd;
  const double var = std::max(0.0, repump_sq / nd - s.mean_repumps * s.mean_repumps);
  s.repump_stderr = std::sqrt(var / nd);

  if (static_cast<double>(s.unresolved) >= 1e-3 * nd) {
    throw NotConverged(std::to_string(s.unresolved) + " of " + std::to_string(n_samples) +
                       " trajectories reached t_max undecided");
  }
  return s;
}

}  // namespace cqed
