#include "cqed/model.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "cqed/errors.hpp"

namespace cqed {
namespace {

constexpr double kBranchingTolerance = 1e-12;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw InvalidParameter(name, "must be finite");
}

}  // namespace

ValidatedRateSet validate(const RateSet& raw) {
  RateSet r = raw;
  require_finite(r.g, "g");
  require_finite(r.kappa_in, "kappa_in");
  require_finite(r.kappa_ex, "kappa_ex");
  require_finite(r.gamma, "gamma");
  require_finite(r.r_u, "r_u");
  require_finite(r.r_g, "r_g");
  require_finite(r.r_o, "r_o");
  require_finite(r.delta_e, "delta_e");
  require_finite(r.delta_u, "delta_u");

  if (r.g <= 0.0) throw InvalidParameter("g", "coupling must be > 0");
  if (r.kappa_in < 0.0) throw InvalidParameter("kappa_in", "must be >= 0");
  if (r.kappa_ex < 0.0) throw InvalidParameter("kappa_ex", "must be >= 0");
  if (r.gamma <= 0.0) throw InvalidParameter("gamma", "must be > 0");
  if (r.kappa_in + r.kappa_ex <= 0.0)
    throw InvalidParameter("kappa", "kappa_in + kappa_ex must be > 0");

  for (auto [v, name] : {std::pair{r.r_u, "r_u"}, {r.r_g, "r_g"}, {r.r_o, "r_o"}}) {
    if (v < 0.0 || v > 1.0) throw InvalidParameter(name, "branching ratio outside [0, 1]");
  }
  const double sum = r.r_u + r.r_g + r.r_o;
  if (std::abs(sum - 1.0) > kBranchingTolerance)
    throw InvalidParameter("branching",
                           "r_u + r_g + r_o = " + std::to_string(sum) + ", expected 1");
  // Leave sums already within rounding of 1 alone so validation is idempotent.
  if (std::abs(sum - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) {
    r.r_u /= sum;
    r.r_g /= sum;
    r.r_o /= sum;
  }
  return ValidatedRateSet(r);
}

Matrix3c effective_hamiltonian(const ValidatedRateSet& rates, double omega, double delta_u) {
  using namespace std::complex_literals;
  const double g = rates.g();
  Matrix3c h;
  h << delta_u, -1i * omega, 0.0,
       1i * omega, rates.delta_e() - 1i * rates.gamma(), 1i * g,
       0.0, -1i * g, -1i * rates.kappa();
  return h;
}

Vector3c amplitude_derivative(const ValidatedRateSet& rates, double omega, double delta_u,
                              const Vector3c& a) {
  using namespace std::complex_literals;
  Vector3c d;
  d[kU0] = -1i * delta_u * a[kU0] - omega * a[kE0];
  d[kE0] = -(rates.gamma() + 1i * rates.delta_e()) * a[kE0] + omega * a[kU0] + rates.g() * a[kG1];
  d[kG1] = -rates.kappa() * a[kG1] - rates.g() * a[kE0];
  return d;
}

void check(const PhysicalCavity& p) {
  if (!(p.mu_ge > 0.0)) throw InvalidParameter("mu_ge", "must be > 0");
  if (!(p.omega_ge > 0.0)) throw InvalidParameter("omega_ge", "must be > 0");
  if (!(p.length > 0.0)) throw InvalidParameter("length", "must be > 0");
  if (!(p.area_eff > 0.0)) throw InvalidParameter("area_eff", "must be > 0");
  if (!(p.alpha_loss >= 0.0) || !std::isfinite(p.alpha_loss))
    throw InvalidParameter("alpha_loss", "must be >= 0");
  if (!(p.r_g > 0.0) || p.r_g > 1.0) throw InvalidParameter("r_g", "must be in (0, 1]");
  if (p.r_u < 0.0 || p.r_u > 1.0) throw InvalidParameter("r_u", "must be in [0, 1]");
  if (p.r_o < 0.0 || p.r_o > 1.0) throw InvalidParameter("r_o", "must be in [0, 1]");
  if (std::abs(p.r_u + p.r_g + p.r_o - 1.0) > kBranchingTolerance)
    throw InvalidParameter("branching", "r_u + r_g + r_o must equal 1");
}

Fingerprint& Fingerprint::add(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h_ ^= (v >> (8 * i)) & 0xffu;
    h_ *= 0x100000001b3ull;
  }
  return *this;
}

Fingerprint& Fingerprint::add(double v) { return add(std::bit_cast<std::uint64_t>(v)); }

}  // namespace cqed
