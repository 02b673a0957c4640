#include "cqed/optimize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <string>

#include "cqed/amplitudes.hpp"
#include "cqed/bounds.hpp"
#include "cqed/errors.hpp"
#include "cqed/master.hpp"
#include "cqed/rng.hpp"

namespace cqed {
namespace {

constexpr double kBoundSlack = 1e-6;

std::optional<std::size_t> knot_index(std::string_view name) {
  constexpr std::string_view prefix = "knot";
  if (!name.starts_with(prefix) || name.size() == prefix.size()) return std::nullopt;
  std::size_t idx = 0;
  const char* first = name.data() + prefix.size();
  const char* last = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(first, last, idx);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return idx;
}

double simulate_ps(const ValidatedRateSet& rates, const DrivePulse& pulse,
                   const ObjectiveOptions& opt) {
  if (opt.include_repumped) return evolve_master(rates, pulse, opt.stop, opt.tol, 0).ps_total;
  return evolve_amplitudes(rates, pulse, opt.stop, opt.tol, 0).ps_norep;
}

double ceiling_for(const ValidatedRateSet& rates, const ObjectiveOptions& opt) {
  if (opt.include_repumped) return ps_upper(rates);
  RateSet r = rates.raw();
  r.r_g += r.r_u;
  r.r_u = 0.0;
  return ps_upper(validate(r));
}

// Memoizing objective that records every distinct evaluation.
class CachedObjective {
 public:
  explicit CachedObjective(std::function<double(const std::vector<double>&)> f)
      : f_(std::move(f)) {}

  double operator()(const std::vector<double>& x) {
    if (auto it = cache_.find(x); it != cache_.end()) return it->second;
    const double v = f_(x);
    cache_.emplace(x, v);
    trace_.push_back({x, v});
    return v;
  }

  bool cached(const std::vector<double>& x) const { return cache_.contains(x); }
  std::size_t evaluations() const { return trace_.size(); }
  std::vector<TracePoint> take_trace() { return std::move(trace_); }

 private:
  std::function<double(const std::vector<double>&)> f_;
  std::map<std::vector<double>, double> cache_;
  std::vector<TracePoint> trace_;
};

}  // namespace

std::string_view to_string(SolverKind s) {
  switch (s) {
    case SolverKind::kAmplitudes: return "amplitudes";
    case SolverKind::kMaster: return "master";
    case SolverKind::kMonteCarlo: return "montecarlo";
  }
  return "unknown";
}

namespace {

double* field(RateSet& r, PulseShape& p, std::string_view name) {
  if (name == "g") return &r.g;
  if (name == "kappa_in") return &r.kappa_in;
  if (name == "kappa_ex") return &r.kappa_ex;
  if (name == "gamma") return &r.gamma;
  if (name == "r_u") return &r.r_u;
  if (name == "r_g") return &r.r_g;
  if (name == "r_o") return &r.r_o;
  if (name == "delta_e") return &r.delta_e;
  if (name == "delta_u") return &r.delta_u;
  if (name == "omega_max") return &p.omega_max;
  if (name == "duration") return &p.duration;
  if (name == "ramp_time") return &p.ramp_time;
  if (name == "center") return &p.center;
  if (name == "width") return &p.width;
  if (name == "chirp") return &p.chirp;
  if (auto k = knot_index(name); k && *k < p.knots.size()) return &p.knots[*k].omega;
  return nullptr;
}

}  // namespace

bool set_parameter(RateSet& r, PulseShape& p, std::string_view name, double v) {
  double* f = field(r, p, name);
  if (f == nullptr) return false;
  *f = v;
  return true;
}

std::optional<double> get_parameter(const RateSet& r, const PulseShape& p, std::string_view name) {
  RateSet rc = r;
  PulseShape pc = p;
  const double* f = field(rc, pc, name);
  if (f == nullptr) return std::nullopt;
  return *f;
}

bool is_parameter_name(std::string_view name) {
  RateSet r;
  PulseShape p;
  return knot_index(name).has_value() || field(r, p, name) != nullptr;
}

OptimizationOutcome maximize_over_kappa_ex(const RateSet& base, const DrivePulse& pulse, double lo,
                                           double hi, double tol,
                                           const ObjectiveOptions& options) {
  if (!(lo > 0.0)) throw InvalidParameter("bracket", "lower end must be > 0");
  if (!(hi > lo)) throw InvalidParameter("bracket", "upper end must exceed lower end");
  if (!(tol > 0.0)) throw InvalidParameter("tol", "must be > 0");

  CachedObjective f([&](const std::vector<double>& x) {
    RateSet r = base;
    r.kappa_ex = x[0];
    return simulate_ps(validate(r), pulse, options);
  });
  auto eval = [&](double k) { return f(std::vector<double>{k}); };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }

  OptimizationOutcome out;
  double best_x = 0.5 * (a + b);
  double best_v = eval(best_x);
  for (auto [x, v] : {std::pair{c, fc}, {d, fd}}) {
    if (v > best_v) {
      best_x = x;
      best_v = v;
    }
  }
  out.converged = true;
  const double f_lo = eval(lo);
  const double f_hi = eval(hi);
  for (auto [x, v] : {std::pair{lo, f_lo}, {hi, f_hi}}) {
    if (v > best_v) {
      best_x = x;
      best_v = v;
      out.converged = false;
      out.message = "bracket end beats interior maximum; objective may not be unimodal";
    }
  }
  out.best = {best_x};
  out.best_ps = best_v;
  out.evaluations = f.evaluations();
  out.trace = f.take_trace();
  return out;
}

OptimizationOutcome optimize_pulse(const ValidatedRateSet& rates, const PulseFamilySpec& family,
                                   std::size_t budget, std::uint64_t seed,
                                   const ObjectiveOptions& options,
                                   const NelderMeadOptions& nm) {
  const std::size_t dim = family.free.size();
  if (dim < 1 || dim > 6) throw InvalidParameter("free", "need 1 to 6 free parameters");
  for (const auto& fp : family.free) {
    if (!is_parameter_name(fp.name)) throw InvalidParameter(fp.name, "unknown parameter");
    if (!(fp.hi > fp.lo)) throw InvalidParameter(fp.name, "empty box");
  }
  if (budget < 1) throw InvalidParameter("budget", "must be >= 1");

  const double ceiling = ceiling_for(rates, options);
  auto to_box = [&](const std::vector<double>& u) {
    std::vector<double> x(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const auto& fp = family.free[i];
      x[i] = fp.lo + std::clamp(u[i], 0.0, 1.0) * (fp.hi - fp.lo);
    }
    return x;
  };
  CachedObjective f([&](const std::vector<double>& x) {
    RateSet unused = rates.raw();
    PulseShape shape = family.base;
    for (std::size_t i = 0; i < dim; ++i) set_parameter(unused, shape, family.free[i].name, x[i]);
    double v = 0.0;
    try {
      v = simulate_ps(rates, DrivePulse(shape), options);
    } catch (const InvalidParameter&) {
      return 0.0;  // infeasible shape inside the box, e.g. ramp_time > duration
    }
    if (v > ceiling + kBoundSlack) {
      throw BoundViolation("simulated P_S=" + std::to_string(v) + " exceeds ceiling " +
                           std::to_string(ceiling));
    }
    return v;
  });

  OptimizationOutcome out;
  bool have_best = false;
  bool budget_hit = false;
  // Minimize the negated success probability in unit-box coordinates.
  auto cost = [&](const std::vector<double>& u) -> std::optional<double> {
    const auto x = to_box(u);
    if (!f.cached(x) && f.evaluations() >= budget) {
      budget_hit = true;
      return std::nullopt;
    }
    const double v = f(x);
    if (!have_best || v > out.best_ps) {
      have_best = true;
      out.best = x;
      out.best_ps = v;
    }
    return -v;
  };

  SplitMix64 rng(seed);
  std::vector<double> start(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& fp = family.free[i];
    const double base_value =
        get_parameter(rates.raw(), family.base, fp.name).value_or(0.5 * (fp.lo + fp.hi));
    start[i] = std::clamp((base_value - fp.lo) / (fp.hi - fp.lo), 0.0, 1.0);
  }

  bool best_run_converged = false;
  for (std::size_t run = 0; run <= nm.restarts && !budget_hit; ++run) {
    if (run > 0) {
      for (auto& s : start) s = rng.uniform_open();
    }
    const double best_before = have_best ? out.best_ps : -1.0;

    // Initial simplex: start plus a 0.25 step along each axis, folded back
    // into the box.
    std::vector<std::vector<double>> simplex(dim + 1, start);
    for (std::size_t i = 0; i < dim; ++i) {
      double& u = simplex[i + 1][i];
      u = u + 0.25 <= 1.0 ? u + 0.25 : u - 0.25;
    }
    std::vector<double> values(dim + 1);
    bool ok = true;
    for (std::size_t k = 0; k <= dim && ok; ++k) {
      auto v = cost(simplex[k]);
      if (!v) ok = false;
      else values[k] = *v;
    }
    bool converged = false;
    while (ok) {
      std::vector<std::size_t> idx(dim + 1);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return values[a] < values[b]; });
      const std::size_t best = idx.front(), worst = idx.back(), second = idx[dim - 1];
      if (values[worst] - values[best] < nm.value_spread) {
        converged = true;
        break;
      }
      std::vector<double> centroid(dim, 0.0);
      for (std::size_t k = 0; k <= dim; ++k) {
        if (k == worst) continue;
        for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[k][i] / dim;
      }
      auto along = [&](double coef) {
        std::vector<double> p(dim);
        for (std::size_t i = 0; i < dim; ++i) {
          p[i] = std::clamp(centroid[i] + coef * (simplex[worst][i] - centroid[i]), 0.0, 1.0);
        }
        return p;
      };
      const auto xr = along(-nm.reflection);
      const auto fr = cost(xr);
      if (!fr) break;
      if (*fr < values[best]) {
        const auto xe = along(-nm.reflection * nm.expansion);
        const auto fe = cost(xe);
        if (!fe) break;
        if (*fe < *fr) {
          simplex[worst] = xe;
          values[worst] = *fe;
        } else {
          simplex[worst] = xr;
          values[worst] = *fr;
        }
        continue;
      }
      if (*fr < values[second]) {
        simplex[worst] = xr;
        values[worst] = *fr;
        continue;
      }
      const bool outside = *fr < values[worst];
      const auto xc = along(outside ? -nm.contraction : nm.contraction);
      const auto fc = cost(xc);
      if (!fc) break;
      if (*fc < std::min(*fr, values[worst])) {
        simplex[worst] = xc;
        values[worst] = *fc;
        continue;
      }
      for (std::size_t k = 0; k <= dim && ok; ++k) {
        if (k == best) continue;
        for (std::size_t i = 0; i < dim; ++i) {
          simplex[k][i] = simplex[best][i] + nm.shrink * (simplex[k][i] - simplex[best][i]);
        }
        auto v = cost(simplex[k]);
        if (!v) ok = false;
        else values[k] = *v;
      }
    }
    if (have_best && (out.best_ps > best_before || run == 0)) best_run_converged = converged;
  }

  out.converged = best_run_converged && have_best;
  out.evaluations = f.evaluations();
  out.trace = f.take_trace();
  if (budget_hit) out.message = "evaluation budget exhausted";
  return out;
}

}  // namespace cqed
