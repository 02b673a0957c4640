#pragma once

#include <Eigen/Core>

#include <complex>
#include <cstdint>

namespace cqed {

// Basis ordering used by every conditioned-dynamics quantity in the library.
enum BasisIndex : int { kU0 = 0, kE0 = 1, kG1 = 2 };

using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;

// Rates and detunings of the Lambda-atom / one-sided-cavity system.
//
// Convention: the excited-state population decays at 2*gamma and the cavity
// photon number at 2*kappa (amplitude rates gamma, kappa). Jump prefactors are
// therefore 2*gamma*r_x and 2*kappa_{ex,in}. Much of the literature uses the
// population-rate convention instead; convert before comparing numbers.
struct RateSet {
  double g = 1.0;
  double kappa_in = 0.0;
  double kappa_ex = 1.0;
  double gamma = 1.0;
  double r_u = 0.0;
  double r_g = 1.0;
  double r_o = 0.0;
  double delta_e = 0.0;
  double delta_u = 0.0;

  bool operator==(const RateSet&) const = default;
};

// A RateSet whose invariants have been checked. Only validate() creates one.
class ValidatedRateSet {
 public:
  const RateSet& raw() const noexcept { return r_; }

  double g() const noexcept { return r_.g; }
  double kappa_in() const noexcept { return r_.kappa_in; }
  double kappa_ex() const noexcept { return r_.kappa_ex; }
  double kappa() const noexcept { return r_.kappa_in + r_.kappa_ex; }
  double gamma() const noexcept { return r_.gamma; }
  double r_u() const noexcept { return r_.r_u; }
  double r_g() const noexcept { return r_.r_g; }
  double r_o() const noexcept { return r_.r_o; }
  double delta_e() const noexcept { return r_.delta_e; }
  double delta_u() const noexcept { return r_.delta_u; }

  bool operator==(const ValidatedRateSet&) const = default;

 private:
  friend ValidatedRateSet validate(const RateSet& raw);
  explicit ValidatedRateSet(const RateSet& r) : r_(r) {}
  RateSet r_;
};

// Checks every RateSet invariant. Branching ratios whose sum is within 1e-12
// of one are renormalized; anything further off is rejected.
// Throws InvalidParameter naming the violated invariant.
ValidatedRateSet validate(const RateSet& raw);
inline ValidatedRateSet validate(const ValidatedRateSet& v) { return validate(v.raw()); }

// Effective non-Hermitian Hamiltonian divided by hbar, in the basis
// (|u,0>, |e,0>, |g,1>). With i*d(alpha)/dt = H*alpha:
//   d(alpha_u)/dt = -i*delta_u*alpha_u - omega*alpha_e
//   d(alpha_e)/dt = -(gamma + i*delta_e)*alpha_e + omega*alpha_u + g*alpha_g
//   d(alpha_g)/dt = -kappa*alpha_g - g*alpha_e
// omega must be real and non-negative.
Matrix3c effective_hamiltonian(const ValidatedRateSet& rates, double omega, double delta_u);

// Right-hand side -i*H*alpha, written out without forming the matrix.
Vector3c amplitude_derivative(const ValidatedRateSet& rates, double omega, double delta_u,
                              const Vector3c& alpha);

// CODATA 2018 exact/recommended values, SI units.
namespace constants {
inline constexpr double kSpeedOfLight = 299792458.0;            // m/s (exact)
inline constexpr double kHbar = 1.054571817e-34;                // J*s (exact)
inline constexpr double kVacuumPermittivity = 8.8541878128e-12; // F/m
inline constexpr double kPi = 3.14159265358979323846;
}  // namespace constants

// SI description of an optical Fabry-Perot cavity with a single emitter.
struct PhysicalCavity {
  double mu_ge = 0.0;       // dipole moment of |g>-|e>, C*m
  double omega_ge = 0.0;    // transition angular frequency, rad/s
  double length = 0.0;      // cavity length L, m
  double area_eff = 0.0;    // effective mode cross-section at the emitter, m^2
  double alpha_loss = 0.0;  // one-round-trip internal loss
  double r_u = 0.0;
  double r_g = 1.0;
  double r_o = 0.0;
};

// Throws InvalidParameter unless all physical fields are positive (alpha_loss
// may be zero), r_g > 0 and the branching ratios sum to one.
void check(const PhysicalCavity& p);

// Order-sensitive 64-bit hash of a run's inputs, used to detect mismatched
// solver results.
class Fingerprint {
 public:
  Fingerprint& add(double v);
  Fingerprint& add(std::uint64_t v);
  std::uint64_t value() const noexcept { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ull;
};

}  // namespace cqed
