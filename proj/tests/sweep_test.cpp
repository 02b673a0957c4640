#include <cqed/amplitudes.hpp>
#include <cqed/errors.hpp>
#include <cqed/master.hpp>
#include <cqed/sweep.hpp>

#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using cqed::DrivePulse;
using cqed::SweepSpec;

SweepSpec tradeoff_spec() {
  SweepSpec spec;
  spec.base = fixtures::limit_rates();
  spec.pulse = DrivePulse::sin2_ramp(1.0, 1000.0).shape();
  spec.axes = {{"kappa_ex", {0.5, 1.0, 2.0, 4.0, 8.0}}};
  return spec;
}

TEST(Sweep, ShowsTheEscapeInternalTradeoff) {
  const auto table = cqed::sweep(tradeoff_spec());
  ASSERT_EQ(table.rows.size(), 5u);
  EXPECT_EQ(table.parameter_names, std::vector<std::string>{"kappa_ex"});
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    ASSERT_TRUE(row.ok) << row.error;
    EXPECT_LE(row.ps, row.ps_upper + 1e-6);
    EXPECT_NEAR(row.C_in, 50.0, 1e-12);
    if (i == 0) continue;
    const auto& prev = table.rows[i - 1];
    EXPECT_GT(row.eta_esc, prev.eta_esc);
    EXPECT_LT(row.ps / row.eta_esc, prev.ps / prev.eta_esc);
  }
}

TEST(Sweep, SingletonRowEqualsDirectCall) {
  SweepSpec spec = tradeoff_spec();
  spec.axes = {{"kappa_ex", {3.0}}};
  const auto table = cqed::sweep(spec);
  ASSERT_EQ(table.rows.size(), 1u);
  auto r = spec.base;
  r.kappa_ex = 3.0;
  const auto v = cqed::validate(r);
  const DrivePulse pulse(spec.pulse);
  const auto m = cqed::evolve_master(v, pulse, {}, {}, 0);
  const auto a = cqed::evolve_amplitudes(v, pulse, {}, {}, 0);
  EXPECT_EQ(table.rows[0].ps, m.ps_total);
  EXPECT_EQ(table.rows[0].adiabaticity, cqed::adiabaticity(a, v));
  EXPECT_EQ(table.rows[0].parameters, std::vector<double>{3.0});
}

TEST(Sweep, CartesianGridInOrder) {
  SweepSpec spec;
  spec.base = fixtures::limit_rates();
  spec.pulse = DrivePulse::vstirap_sin(1.0, 20.0).shape();
  spec.solver = cqed::SolverKind::kAmplitudes;
  spec.axes = {{"g", {5.0, 10.0}}, {"duration", {30.0, 20.0, 10.0}}};
  const auto table = cqed::sweep(spec);
  ASSERT_EQ(table.rows.size(), 6u);
  EXPECT_EQ(table.rows[0].parameters, (std::vector<double>{5.0, 30.0}));
  EXPECT_EQ(table.rows[1].parameters, (std::vector<double>{5.0, 20.0}));
  EXPECT_EQ(table.rows[3].parameters, (std::vector<double>{10.0, 30.0}));
  for (const auto& row : table.rows) EXPECT_TRUE(std::isnan(row.p_rep));
}

TEST(Sweep, VaryingRepumpCompletesBranching) {
  SweepSpec spec = tradeoff_spec();
  spec.base.r_g = 0.5;
  spec.base.r_o = 0.5;
  spec.pulse = DrivePulse::sin2_ramp(1.0, 40.0).shape();
  spec.axes = {{"r_u", {0.0, 0.2, 0.4}}};
  const auto table = cqed::sweep(spec);
  for (const auto& row : table.rows) {
    ASSERT_TRUE(row.ok) << row.error;
    EXPECT_GE(row.p_rep, 0.0);
  }
  EXPECT_EQ(table.rows[0].p_rep, 0.0);
  EXPECT_GT(table.rows[2].p_rep, table.rows[1].p_rep);
}

TEST(Sweep, FailedRowsDoNotAbort) {
  SweepSpec spec = tradeoff_spec();
  spec.pulse = DrivePulse::constant(1.0, 5.0).shape();
  spec.stop.t_max = 20.0;
  spec.axes = {{"duration", {5.0, 50.0}}};
  const auto table = cqed::sweep(spec);
  ASSERT_EQ(table.rows.size(), 2u);
  EXPECT_TRUE(table.rows[0].ok);
  EXPECT_FALSE(table.rows[1].ok);
  EXPECT_NE(table.rows[1].error.find("NotConverged"), std::string::npos);
}

TEST(Sweep, IndependentOfWorkerCount) {
  SweepSpec spec = tradeoff_spec();
  spec.pulse = DrivePulse::sin2_ramp(1.0, 30.0).shape();
  spec.workers = 1;
  const auto a = cqed::sweep(spec);
  spec.workers = 3;
  const auto b = cqed::sweep(spec);
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].ps, b.rows[i].ps);
}

TEST(Sweep, RejectsBadSpecs) {
  SweepSpec spec = tradeoff_spec();
  spec.axes.clear();
  EXPECT_THROW(cqed::sweep(spec), cqed::SpecError);
  spec.axes = {{"kappa_ex", {}}};
  EXPECT_THROW(cqed::sweep(spec), cqed::SpecError);
  spec.axes = {{"kappa_ex", {1.0, 3.0, 2.0}}};
  EXPECT_THROW(cqed::sweep(spec), cqed::SpecError);
  spec.axes = {{"kappa_ex", {1.0, 1.0}}};
  EXPECT_THROW(cqed::sweep(spec), cqed::SpecError);
  spec.axes = {{"flux", {1.0}}};
  EXPECT_THROW(cqed::sweep(spec), cqed::SpecError);
  spec.axes = {{"g", {1.0}}, {"g", {2.0}}};
  EXPECT_THROW(cqed::sweep(spec), cqed::SpecError);
}

}  // namespace
