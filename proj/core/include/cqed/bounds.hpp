#pragma once

#include "cqed/model.hpp"

namespace cqed {

// Closed-form efficiency limits for single-photon emission from a
// Lambda-atom in a one-sided cavity with internal loss.
//
// Lossless limits are legitimate queries: kappa_in = 0 (or alpha_loss = 0)
// yields C_in = +infinity and pf_lower = 0 instead of an error.

struct Cooperativities {
  double C = 0.0;     // g^2 / (2 kappa gamma)
  double C_in = 0.0;  // g^2 / (2 kappa_in gamma), +inf for kappa_in = 0
};

Cooperativities cooperativities(const ValidatedRateSet& rates);

// Success-probability ceiling (kappa_ex/kappa) * 2C / (1 + 2C - r_u), the
// summed geometric series over repump cycles in the slow-variation limit.
double ps_upper(const ValidatedRateSet& rates);

// Ceiling on the photons that follow at least one repump:
// (kappa_ex/kappa) * [2C/(1+2C)] * r_u / (1 + 2C - r_u).
double prep_upper(const ValidatedRateSet& rates);

// Minimum failure probability 2 / (1 + sqrt(1 + 2 C_in / (1 - r_u))) over all
// kappa_ex. Returns 0 for r_u = 1 or C_in = inf. Throws DomainError for
// r_u outside [0, 1] or negative C_in.
double pf_lower(double c_in, double r_u);

// sqrt(2 / C_in); accurate when C_in >> 1.
double pf_lower_approx(double c_in);

// kappa_in * sqrt(1 + 2 C_in / (1 - r_u)). At this kappa_ex,
// 1 - ps_upper == pf_lower. Throws DomainError unless kappa_in > 0 and
// r_u in [0, 1].
double kappa_ex_opt(double kappa_in, double c_in, double r_u);

struct BoundReport {
  double C = 0.0;
  double C_in = 0.0;
  double eta_esc = 0.0;
  double ps_upper = 0.0;
  double pf_lower = 0.0;
  double kappa_ex_opt = 0.0;  // 0 in the lossless limit, inf when r_u = 1
  double prep_upper = 0.0;
  double pf_lower_approx = 0.0;
};

BoundReport bound_report(const ValidatedRateSet& rates);

// SI rates of a physical cavity. gamma is the total amplitude decay rate of
// |e>, recovered from the |g>-|e> partial rate as r_g*gamma / r_g.
struct PhysicalRates {
  double g = 0.0;
  double kappa_in = 0.0;
  double gamma = 0.0;
  double r_A = 0.0;   // A_eff / sigma, sigma = 3 lambda^2 / (2 pi)
  double C_in = 0.0;  // +inf for alpha_loss = 0
};

PhysicalRates rates_from_physical(const PhysicalCavity& cavity);

// C_in = r_g / (2 alpha_loss r_A), which depends only on the round-trip loss
// and the mode-area ratio. Throws DomainError on non-positive inputs or
// r_u outside [0, 1).
double cin_from_roundtrip(double alpha_loss, double r_A, double r_g, double r_u);

// 2 C_in / (1 - r_u), the argument of the square root in pf_lower.
double effective_internal_cooperativity(double c_in, double r_u);

}  // namespace cqed
