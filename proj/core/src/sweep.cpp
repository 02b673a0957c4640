#include "cqed/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "cqed/amplitudes.hpp"
#include "cqed/bounds.hpp"
#include "cqed/errors.hpp"
#include "cqed/master.hpp"
#include "cqed/montecarlo.hpp"
#include "cqed/parallel.hpp"

namespace cqed {
namespace {

void check_spec(const SweepSpec& spec) {
  if (spec.axes.empty()) throw SpecError("sweep needs at least one varying parameter");
  std::set<std::string> seen;
  for (const auto& axis : spec.axes) {
    if (!is_parameter_name(axis.name)) throw SpecError("unknown sweep parameter '" + axis.name + "'");
    if (!seen.insert(axis.name).second) throw SpecError("parameter '" + axis.name + "' repeated");
    if (axis.values.empty()) throw SpecError("grid for '" + axis.name + "' is empty");
    const auto& v = axis.values;
    const bool up = std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
    const bool down = std::adjacent_find(v.begin(), v.end(), std::less_equal<>()) == v.end();
    if (!up && !down) throw SpecError("grid for '" + axis.name + "' is not strictly monotone");
  }
}

SweepRow evaluate_row(const SweepSpec& spec, const std::vector<double>& params,
                      std::size_t inner_workers) {
  SweepRow row;
  row.parameters = params;
  row.p_rep = std::numeric_limits<double>::quiet_NaN();
  RateSet raw = spec.base;
  PulseShape shape = spec.pulse;
  bool sets_branching = false;
  bool sets_r_o = false;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& name = spec.axes[i].name;
    set_parameter(raw, shape, name, params[i]);
    sets_branching |= name == "r_u" || name == "r_g";
    sets_r_o |= name == "r_o";
  }
  if (sets_branching && !sets_r_o) raw.r_o = 1.0 - raw.r_u - raw.r_g;

  try {
    const ValidatedRateSet rates = validate(raw);
    const DrivePulse pulse(shape);
    const BoundReport b = bound_report(rates);
    row.ps_upper = b.ps_upper;
    row.pf_lower = b.pf_lower;
    row.eta_esc = b.eta_esc;
    row.C = b.C;
    row.C_in = b.C_in;
    const AmplitudeResult amps = evolve_amplitudes(rates, pulse, spec.stop, spec.tol, 0);
    row.adiabaticity = adiabaticity(amps, rates);
    switch (spec.solver) {
      case SolverKind::kAmplitudes:
        row.ps = amps.ps_norep;
        break;
      case SolverKind::kMaster: {
        const MasterResult m = evolve_master(rates, pulse, spec.stop, spec.tol, 0);
        row.ps = m.ps_total;
        row.p_rep = repump_contribution(m, amps);
        break;
      }
      case SolverKind::kMonteCarlo: {
        const TrajectoryStats s = run_trajectories(
            rates, pulse, spec.trajectories, spec.seed,
            TrajectoryOptions{spec.stop, spec.tol, inner_workers});
        row.ps = s.p_success_hat;
        row.p_rep = s.p_rep_hat;
        break;
      }
    }
  } catch (const Error& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

}  // namespace

SweepTable sweep(const SweepSpec& spec) {
  check_spec(spec);
  SweepTable table;
  std::size_t total = 1;
  for (const auto& axis : spec.axes) {
    table.parameter_names.push_back(axis.name);
    total *= axis.values.size();
  }

  std::vector<std::vector<double>> points(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    auto& p = points[flat];
    p.resize(spec.axes.size());
    for (std::size_t i = spec.axes.size(); i-- > 0;) {
      const auto& v = spec.axes[i].values;
      p[i] = v[rem % v.size()];
      rem /= v.size();
    }
  }

  const std::size_t workers = spec.workers == 0 ? worker_count() : spec.workers;
  const std::size_t inner = total >= workers ? 1 : workers / total;
  table.rows.resize(total);
  parallel_for(total, workers,
               [&](std::size_t i) { table.rows[i] = evaluate_row(spec, points[i], inner); });
  return table;
}

}  // namespace cqed
