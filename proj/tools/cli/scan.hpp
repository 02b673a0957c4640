#pragma once

#include <cqed/amplitudes.hpp>
#include <cqed/master.hpp>
#include <cqed/model.hpp>
#include <cqed/pulse.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cqed::cli {

// Random parameter sets for bound-compliance scans. g, kappa_in and kappa_ex
// are log-uniform on [0.1, 10] (gamma = 1), r_u is uniform on [0, r_u_max],
// the rest of the branching is split uniformly between r_g and r_o, and the
// pulse family is drawn uniformly with omega_max log-uniform on [0.1, 10] and
// duration uniform on [2, 40].
struct DrawOptions {
  double r_u_max = 0.9;
};

struct Draw {
  RateSet rates;
  PulseShape pulse;
};

Draw random_draw(std::uint64_t seed, std::uint64_t index, const DrawOptions& options = {});

struct DrawOutcome {
  Draw draw;
  std::string error;  // empty on success
  std::optional<AmplitudeResult> amplitudes;
  std::optional<MasterResult> master;
  double ps = 0.0;  // master
  double ps_upper = 0.0;
  double p_rep = 0.0;
  double prep_upper = 0.0;

  bool ok() const { return error.empty(); }
};

// Runs the amplitude and master solvers on `count` draws (without time
// series). Results are in draw order for any worker count.
std::vector<DrawOutcome> run_scan(std::uint64_t count, std::uint64_t seed,
                                  const DrawOptions& options = {}, std::size_t workers = 0);

}  // namespace cqed::cli
