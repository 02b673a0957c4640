#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cqed/model.hpp"
#include "cqed/optimize.hpp"
#include "cqed/pulse.hpp"
#include "cqed/solver_options.hpp"

namespace cqed {

struct SweepAxis {
  std::string name;  // any name accepted by set_parameter
  std::vector<double> values;
};

// Cartesian grid over one or more parameters, first axis slowest. When an
// axis sets r_u or r_g and no axis sets r_o, r_o absorbs the remainder
// 1 - r_u - r_g (rows where that goes negative fail validation).
struct SweepSpec {
  std::vector<SweepAxis> axes;
  RateSet base;
  PulseShape pulse;
  StopRule stop;
  ToleranceSpec tol;
  SolverKind solver = SolverKind::kMaster;
  std::uint64_t trajectories = 10000;  // montecarlo only
  std::uint64_t seed = 1;              // montecarlo only
  std::size_t workers = 0;             // 0 = worker_count()
};

// One grid point. Every solver also runs the amplitude equations for the
// adiabaticity column; p_rep is NaN for the amplitude-only solver.
struct SweepRow {
  std::vector<double> parameters;
  bool ok = true;
  std::string error;
  double ps = 0.0;
  double ps_upper = 0.0;
  double pf_lower = 0.0;
  double eta_esc = 0.0;
  double C = 0.0;
  double C_in = 0.0;
  double adiabaticity = 0.0;
  double p_rep = 0.0;
};

struct SweepTable {
  std::vector<std::string> parameter_names;
  std::vector<SweepRow> rows;  // grid order
};

// Throws SpecError for an empty axis list, an empty or non-monotone grid, an
// unknown or repeated name. Solver failures mark the row failed instead.
SweepTable sweep(const SweepSpec& spec);

}  // namespace cqed
