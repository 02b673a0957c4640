#include <cqed/bounds.hpp>
#include <cqed/errors.hpp>

#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace {

using cqed::RateSet;
using cqed::validate;

constexpr double kPi = 3.14159265358979323846;

RateSet rates(double g, double kappa_in, double kappa_ex, double r_u = 0.0) {
  RateSet r;
  r.g = g;
  r.kappa_in = kappa_in;
  r.kappa_ex = kappa_ex;
  r.gamma = 1.0;
  r.r_u = r_u;
  r.r_g = 1.0 - r_u;
  r.r_o = 0.0;
  return r;
}

TEST(Cooperativity, Examples) {
  const auto a = cqed::cooperativities(validate(rates(2.0, 1.0, 0.0)));
  EXPECT_DOUBLE_EQ(a.C, 2.0);
  EXPECT_DOUBLE_EQ(a.C_in, 2.0);

  const auto b = cqed::cooperativities(validate(fixtures::limit_rates()));
  EXPECT_NEAR(b.C_in, 50.0, 1e-12);
  EXPECT_NEAR(b.C, 100.0 / (2.0 * (1.0 + std::sqrt(101.0))), 1e-12);

  const auto v = validate(rates(2.0, 0.0, 1.0));
  EXPECT_TRUE(std::isinf(cqed::cooperativities(v).C_in));
  EXPECT_EQ(cqed::bound_report(v).pf_lower, 0.0);
  EXPECT_EQ(cqed::bound_report(v).kappa_ex_opt, 0.0);
}

// kappa_ex = 3, kappa_in = 1, gamma = 1 and g = 4 give C = 2.
TEST(SuccessBound, Examples) {
  EXPECT_NEAR(cqed::ps_upper(validate(rates(4.0, 1.0, 3.0))), 0.6, 1e-12);
  EXPECT_NEAR(cqed::ps_upper(validate(rates(4.0, 1.0, 3.0, 0.5))), 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(cqed::ps_upper(validate(rates(4.0, 0.0, 3.0, 1.0))), 1.0);
}

TEST(RepumpBound, Examples) {
  EXPECT_EQ(cqed::prep_upper(validate(rates(4.0, 1.0, 3.0))), 0.0);
  EXPECT_NEAR(cqed::prep_upper(validate(rates(4.0, 1.0, 3.0, 0.5))), 1.0 / 15.0, 1e-12);
  // Strong coupling: prep_upper ~ (kappa_ex / kappa) r_u / (2C) with C = 1.25e7.
  EXPECT_NEAR(cqed::prep_upper(validate(rates(1e4, 1.0, 3.0, 0.5))), 0.75 * 0.5 / 2.5e7, 1e-14);
}

TEST(FailureBound, Examples) {
  EXPECT_NEAR(cqed::pf_lower(4.0, 0.0), 0.5, 1e-12);
  EXPECT_NEAR(cqed::pf_lower(0.0, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(cqed::pf_lower(40.0, 0.2), 2.0 / (1.0 + std::sqrt(101.0)), 1e-12);
  EXPECT_EQ(cqed::pf_lower(3.0, 1.0), 0.0);
  EXPECT_EQ(cqed::pf_lower(std::numeric_limits<double>::infinity(), 0.3), 0.0);
  EXPECT_THROW(cqed::pf_lower(4.0, 1.5), cqed::DomainError);
  EXPECT_THROW(cqed::pf_lower(4.0, -0.1), cqed::DomainError);
  EXPECT_THROW(cqed::pf_lower(-1.0, 0.0), cqed::DomainError);
}

TEST(OptimalCoupling, Examples) {
  EXPECT_NEAR(cqed::kappa_ex_opt(1.0, 4.0, 0.0), 3.0, 1e-12);
  EXPECT_NEAR(cqed::kappa_ex_opt(1.0, 0.0, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(cqed::kappa_ex_opt(1.0, 40.0, 0.2), std::sqrt(101.0), 1e-12);
  EXPECT_THROW(cqed::kappa_ex_opt(0.0, 4.0, 0.0), cqed::DomainError);
  EXPECT_THROW(cqed::kappa_ex_opt(1.0, 4.0, 1.0), cqed::DomainError);
}

TEST(Duality, OptimumAttainsTheFailureBound) {
  auto rng = cqed::SplitMix64::stream(41, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const double kappa_in = fixtures::log_uniform(rng, 0.01, 10);
    const double g = fixtures::log_uniform(rng, 0.1, 100);
    const double r_u = 0.95 * rng.uniform_open();
    const double c_in = g * g / (2.0 * kappa_in);
    const double pf = cqed::pf_lower(c_in, r_u);
    const double opt = cqed::kappa_ex_opt(kappa_in, c_in, r_u);
    EXPECT_NEAR(pf, 2.0 * kappa_in / (kappa_in + opt), 1e-12);
    EXPECT_NEAR(1.0 - cqed::ps_upper(validate(rates(g, kappa_in, opt, r_u))), pf, 1e-12);

    for (double factor : {0.3, 0.9, 1.1, 4.0}) {
      const auto v = validate(rates(g, kappa_in, factor * opt, r_u));
      EXPECT_GT(1.0 - cqed::ps_upper(v), pf);
    }
  }
}

TEST(Report, FieldsAreConsistent) {
  const auto v = validate(rates(4.0, 1.0, 3.0, 0.5));
  const auto b = cqed::bound_report(v);
  EXPECT_DOUBLE_EQ(b.eta_esc, 0.75);
  EXPECT_DOUBLE_EQ(b.ps_upper, cqed::ps_upper(v));
  EXPECT_DOUBLE_EQ(b.prep_upper, cqed::prep_upper(v));
  EXPECT_DOUBLE_EQ(b.pf_lower, cqed::pf_lower(8.0, 0.5));
  EXPECT_DOUBLE_EQ(b.kappa_ex_opt, cqed::kappa_ex_opt(1.0, 8.0, 0.5));
  EXPECT_DOUBLE_EQ(b.pf_lower_approx, 0.5);
}

TEST(Approximation, LargeInternalCooperativity) {
  for (double c_in = 100.0; c_in < 1e7; c_in *= 1.7) {
    const double pf = cqed::pf_lower(c_in, 0.0);
    EXPECT_LE(std::abs(pf - cqed::pf_lower_approx(c_in)) / pf, 0.15);
  }
}

TEST(Approximation, ArithmeticGeometricRoute) {
  auto rng = cqed::SplitMix64::stream(42, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const double kappa = fixtures::log_uniform(rng, 1, 100);
    const double kappa_in = kappa * fixtures::log_uniform(rng, 1e-4, 1e-2);
    const double g = std::sqrt(2.0 * kappa * fixtures::log_uniform(rng, 10, 1e4));
    const double c_in = g * g / (2.0 * kappa_in);
    EXPECT_GE(kappa_in / kappa + kappa / (g * g), std::sqrt(2.0 / c_in) * (1.0 - 1e-12));
  }
}

cqed::PhysicalCavity sample_cavity() {
  cqed::PhysicalCavity c;
  c.mu_ge = 2.5e-29;
  c.omega_ge = 2.0 * kPi * cqed::constants::kSpeedOfLight / 852e-9;
  c.length = 1e-3;
  c.area_eff = kPi * 20e-6 * 20e-6;
  c.alpha_loss = 1e-4;
  c.r_u = 0.2;
  c.r_g = 0.5;
  c.r_o = 0.3;
  return c;
}

TEST(Physical, RatesFollowTheCavityFormulas) {
  const auto c = sample_cavity();
  const auto p = cqed::rates_from_physical(c);
  const double eps0 = cqed::constants::kVacuumPermittivity;
  const double hbar = cqed::constants::kHbar;
  const double speed = cqed::constants::kSpeedOfLight;
  EXPECT_NEAR(p.g, std::sqrt(c.mu_ge * c.mu_ge * c.omega_ge / (2 * eps0 * hbar * c.area_eff * c.length)),
              1e-12 * p.g);
  EXPECT_NEAR(p.kappa_in, speed * c.alpha_loss / (2 * c.length), 1e-12 * p.kappa_in);
  const double partial = std::pow(c.mu_ge, 2) * std::pow(c.omega_ge, 3) /
                         (6 * kPi * eps0 * hbar * std::pow(speed, 3));
  EXPECT_NEAR(p.gamma, partial / c.r_g, 1e-12 * p.gamma);
  EXPECT_NEAR(p.C_in, p.g * p.g / (2 * p.kappa_in * p.gamma), 1e-12 * p.C_in);
  EXPECT_NEAR(2.0 * p.C_in, c.r_g / (c.alpha_loss * p.r_A), 1e-12 * p.C_in);
}

TEST(Physical, LengthAndDipoleCancel) {
  const auto base = cqed::rates_from_physical(sample_cavity());
  auto longer = sample_cavity();
  longer.length *= 2.0;
  auto stronger = sample_cavity();
  stronger.mu_ge *= 2.0;
  EXPECT_NEAR(cqed::rates_from_physical(longer).C_in, base.C_in, 1e-12 * base.C_in);
  EXPECT_NEAR(cqed::rates_from_physical(stronger).C_in, base.C_in, 1e-12 * base.C_in);
}

TEST(Physical, LosslessCavityIsUnbounded) {
  auto c = sample_cavity();
  c.alpha_loss = 0.0;
  const auto p = cqed::rates_from_physical(c);
  EXPECT_EQ(p.kappa_in, 0.0);
  EXPECT_TRUE(std::isinf(p.C_in));
  EXPECT_EQ(cqed::pf_lower(p.C_in, c.r_u), 0.0);
}

TEST(Roundtrip, Examples) {
  const double a = cqed::cin_from_roundtrip(0.01, 1.0, 1.0, 0.0);
  EXPECT_NEAR(a, 50.0, 1e-12);
  EXPECT_NEAR(cqed::pf_lower(a, 0.0), 2.0 / (1.0 + std::sqrt(101.0)), 1e-12);

  const double b = cqed::cin_from_roundtrip(0.01, 1.0, 0.5, 0.5);
  EXPECT_NEAR(2.0 * b / (1.0 - 0.5), 100.0, 1e-12);
  EXPECT_NEAR(cqed::effective_internal_cooperativity(b, 0.5), 100.0, 1e-12);
  EXPECT_NEAR(cqed::pf_lower(b, 0.5), cqed::pf_lower(a, 0.0), 1e-12);

  EXPECT_THROW(cqed::cin_from_roundtrip(0.0, 1.0, 1.0, 0.0), cqed::DomainError);
  EXPECT_THROW(cqed::cin_from_roundtrip(0.01, 0.0, 1.0, 0.0), cqed::DomainError);
  EXPECT_THROW(cqed::cin_from_roundtrip(0.01, 1.0, 0.0, 0.0), cqed::DomainError);
  EXPECT_THROW(cqed::cin_from_roundtrip(0.01, 1.0, 1.0, 1.0), cqed::DomainError);
}

TEST(Roundtrip, LeakyBranchingNeverBeatsTheClosedCase) {
  auto rng = cqed::SplitMix64::stream(43, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const double alpha = fixtures::log_uniform(rng, 1e-5, 1e-1);
    const double r_a = fixtures::log_uniform(rng, 0.1, 100);
    const double r_u = 0.9 * rng.uniform_open();
    const double r_g = (1.0 - r_u) * rng.uniform_open();
    const double closed = cqed::pf_lower(cqed::cin_from_roundtrip(alpha, r_a, 1.0, 0.0), 0.0);
    const double leaky = cqed::pf_lower(cqed::cin_from_roundtrip(alpha, r_a, r_g, r_u), r_u);
    EXPECT_GE(leaky, closed * (1.0 - 1e-12));
  }
}

}  // namespace
