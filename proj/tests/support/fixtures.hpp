#pragma once

#include <cqed/model.hpp>
#include <cqed/pulse.hpp>
#include <cqed/rng.hpp>

#include <cmath>

namespace fixtures {

// gamma = 1, kappa_in = 1, g = 10 (C_in = 50), kappa_ex at its optimum sqrt(101).
inline cqed::RateSet limit_rates() {
  cqed::RateSet r;
  r.g = 10.0;
  r.kappa_in = 1.0;
  r.kappa_ex = std::sqrt(101.0);
  r.gamma = 1.0;
  r.r_u = 0.0;
  r.r_g = 1.0;
  r.r_o = 0.0;
  return r;
}

inline double log_uniform(cqed::SplitMix64& rng, double lo, double hi) {
  return lo * std::pow(hi / lo, rng.uniform_open());
}

inline double uniform(cqed::SplitMix64& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.uniform_open();
}

}  // namespace fixtures
