#include "cqed/bounds.hpp"

#include <cmath>
#include <limits>

#include "cqed/errors.hpp"

namespace cqed {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_branching(double r_u) {
  if (!(r_u >= 0.0 && r_u <= 1.0)) throw DomainError("r_u must lie in [0, 1]");
}

}  // namespace

Cooperativities cooperativities(const ValidatedRateSet& r) {
  const double g2 = r.g() * r.g();
  Cooperativities c;
  c.C = g2 / (2.0 * r.kappa() * r.gamma());
  c.C_in = r.kappa_in() > 0.0 ? g2 / (2.0 * r.kappa_in() * r.gamma()) : kInf;
  return c;
}

double ps_upper(const ValidatedRateSet& r) {
  const double c2 = 2.0 * cooperativities(r).C;
  return (r.kappa_ex() / r.kappa()) * c2 / (1.0 + c2 - r.r_u());
}

double prep_upper(const ValidatedRateSet& r) {
  const double c2 = 2.0 * cooperativities(r).C;
  return (r.kappa_ex() / r.kappa()) * (c2 / (1.0 + c2)) * r.r_u() / (1.0 + c2 - r.r_u());
}

double effective_internal_cooperativity(double c_in, double r_u) {
  if (!(c_in >= 0.0)) throw DomainError("C_in must be >= 0");
  check_branching(r_u);
  if (r_u == 1.0 || std::isinf(c_in)) return kInf;
  return 2.0 * c_in / (1.0 - r_u);
}

double pf_lower(double c_in, double r_u) {
  const double x = effective_internal_cooperativity(c_in, r_u);
  if (std::isinf(x)) return 0.0;
  return 2.0 / (1.0 + std::sqrt(1.0 + x));
}

double pf_lower_approx(double c_in) {
  if (!(c_in >= 0.0)) throw DomainError("C_in must be >= 0");
  return std::sqrt(2.0 / c_in);
}

double kappa_ex_opt(double kappa_in, double c_in, double r_u) {
  if (!(kappa_in > 0.0) || std::isinf(kappa_in)) throw DomainError("kappa_in must be > 0");
  if (r_u == 1.0) throw DomainError("r_u must be < 1");
  return kappa_in * std::sqrt(1.0 + effective_internal_cooperativity(c_in, r_u));
}

BoundReport bound_report(const ValidatedRateSet& r) {
  const Cooperativities c = cooperativities(r);
  BoundReport b;
  b.C = c.C;
  b.C_in = c.C_in;
  b.eta_esc = r.kappa_ex() / r.kappa();
  b.ps_upper = ps_upper(r);
  b.pf_lower = pf_lower(c.C_in, r.r_u());
  if (r.kappa_in() == 0.0) {
    b.kappa_ex_opt = 0.0;
  } else if (r.r_u() == 1.0) {
    b.kappa_ex_opt = kInf;  // perfect repumping: any escape rate is eventually collected
  } else {
    b.kappa_ex_opt = kappa_ex_opt(r.kappa_in(), c.C_in, r.r_u());
  }
  b.prep_upper = prep_upper(r);
  b.pf_lower_approx = pf_lower_approx(c.C_in);
  return b;
}

PhysicalRates rates_from_physical(const PhysicalCavity& p) {
  using namespace constants;
  check(p);
  const double mu2 = p.mu_ge * p.mu_ge;
  const double w = p.omega_ge;
  PhysicalRates out;
  out.g = std::sqrt(mu2 * w / (2.0 * kVacuumPermittivity * kHbar * p.area_eff * p.length));
  out.kappa_in = kSpeedOfLight * p.alpha_loss / (2.0 * p.length);
  const double partial_gamma =
      mu2 * w * w * w / (6.0 * kPi * kVacuumPermittivity * kHbar * std::pow(kSpeedOfLight, 3));
  out.gamma = partial_gamma / p.r_g;
  const double lambda = 2.0 * kPi * kSpeedOfLight / w;
  const double sigma = 3.0 * lambda * lambda / (2.0 * kPi);
  out.r_A = p.area_eff / sigma;
  out.C_in = out.kappa_in > 0.0 ? out.g * out.g / (2.0 * out.kappa_in * out.gamma) : kInf;
  return out;
}

double cin_from_roundtrip(double alpha_loss, double r_A, double r_g, double r_u) {
  if (!(alpha_loss > 0.0)) throw DomainError("alpha_loss must be > 0");
  if (!(r_A > 0.0)) throw DomainError("r_A must be > 0");
  if (!(r_g > 0.0 && r_g <= 1.0)) throw DomainError("r_g must lie in (0, 1]");
  if (!(r_u >= 0.0 && r_u < 1.0)) throw DomainError("r_u must lie in [0, 1)");
  return r_g / (2.0 * alpha_loss * r_A);
}

}  // namespace cqed
