// Copyright 2026 The Quadbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quadbench/gait.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Geometry>

#include "quadbench/errors.hpp"

namespace quadbench {
namespace {

const RobotGeometry kGeom;

GaitParams half_duty() {
  GaitParams gp;
  gp.frequency = 2.0;
  gp.stance_fraction = 0.5;
  return gp;
}

TEST(Gait, TrotOffsetsAtTimeZero) {
  const GaitParams gp = half_duty();
  EXPECT_TRUE(leg_phase(0.0, Leg::FR, gp).in_stance);
  EXPECT_TRUE(leg_phase(0.0, Leg::BL, gp).in_stance);
  EXPECT_FALSE(leg_phase(0.0, Leg::FL, gp).in_stance);
  EXPECT_FALSE(leg_phase(0.0, Leg::BR, gp).in_stance);
  EXPECT_EQ(leg_phase(0.0, Leg::FL, gp).phase, leg_phase(0.0, Leg::BR, gp).phase);
  EXPECT_EQ(leg_phase(0.0, Leg::FL, gp).phase, 0.5);
}

TEST(Gait, PhaseWrapsIntoUnitInterval) {
  const GaitParams gp = half_duty();
  for (int k = 0; k < 1000; ++k) {
    const double t = 0.0137 * k;
    const LegPhase p = leg_phase(t, Leg::BR, gp);
    ASSERT_GE(p.phase, 0.0);
    ASSERT_LT(p.phase, 1.0);
    EXPECT_NEAR(p.phase, std::fmod(t * gp.frequency + 0.5, 1.0), 1e-12);
  }
}

TEST(Gait, SampledDutyMatchesStanceFraction) {
  for (double duty : {0.3, 0.5, 0.7}) {
    GaitParams gp;
    gp.stance_fraction = duty;
    const int samples = 10000;
    const double period = 1.0 / gp.frequency;
    int stance = 0;
    for (int k = 0; k < samples; ++k) {
      stance += leg_phase(period * k / samples, Leg::FL, gp).in_stance ? 1 : 0;
    }
    EXPECT_NEAR(static_cast<double>(stance) / samples, duty, 1.0 / samples);
  }
}

TEST(Gait, HalfDutyTrotAlwaysHasTwoFeetDown) {
  const GaitParams gp = half_duty();
  const VelocityCommand cmd{0.5, 0.0, 0.0};
  for (int k = 0; k < 2000; ++k) {
    const LegCommands legs = controller_step(0.001 * k, cmd, gp, kGeom);
    int down = 0;
    for (const LegCommand& c : legs) down += std::get<FootCommand>(c).f_ff.z() < 0.0 ? 1 : 0;
    ASSERT_EQ(down, 2) << "t = " << 0.001 * k;
  }
}

TEST(Gait, StanceVelocityIsRigidField) {
  const VelocityCommand cmd{0.3, -0.1, 0.8};
  const Vec3 r{0.2, 0.1, -0.14};
  const Vec3 v = stance_velocity(r, cmd);
  const Vec3 expected = -(Vec3{cmd.v_x, cmd.v_y, 0.0} + Vec3{0.0, 0.0, cmd.omega_z}.cross(r));
  EXPECT_NEAR((v - expected).norm(), 0.0, 1e-15);
}

TEST(Gait, StanceTargetFollowsFieldExactly) {
  // A stance foot is a ground-fixed point seen from the moving body, so its
  // finite-difference velocity equals the field at its position.
  const GaitParams gp;
  const VelocityCommand cmd{0.4, 0.1, 0.9};
  const double h = 1e-6;
  for (Leg leg : kAllLegs) {
    for (double phase : {0.05, 0.3, 0.6}) {
      const FootTarget a = stance_target(phase - h * gp.frequency, cmd, leg, gp, kGeom);
      const FootTarget b = stance_target(phase + h * gp.frequency, cmd, leg, gp, kGeom);
      const FootTarget m = stance_target(phase, cmd, leg, gp, kGeom);
      const Vec3 fd = (b.r_ref - a.r_ref) / (2.0 * h);
      EXPECT_LE((fd - stance_velocity(m.r_ref, cmd)).norm(), 1e-6);
      EXPECT_LE((m.v_ref - stance_velocity(m.r_ref, cmd)).norm(), 1e-12);
    }
  }
}

TEST(Gait, StanceIsCentredOnNeutralFoothold) {
  const GaitParams gp;
  const VelocityCommand cmd{0.5, 0.0, 0.0};
  const FootTarget mid = stance_target(0.5 * gp.stance_fraction, cmd, Leg::FL, gp, kGeom);
  EXPECT_LE((mid.r_ref - neutral_foothold(Leg::FL, gp, kGeom)).norm(), 1e-12);
  const FootTarget start = stance_target(0.0, cmd, Leg::FL, gp, kGeom);
  const double stride = cmd.v_x * gp.stance_fraction / gp.frequency;
  EXPECT_NEAR(start.r_ref.x() - mid.r_ref.x(), 0.5 * stride, 1e-12);
}

TEST(Gait, TargetsContinuousAcrossPhaseBoundaries) {
  GaitParams gp;
  gp.stance_depth = 0.005;
  const VelocityCommand cmd{0.5, 0.05, 0.4};
  const double eps = 1e-9;
  for (Leg leg : kAllLegs) {
    // Liftoff.
    const FootTarget s = stance_target(gp.stance_fraction, cmd, leg, gp, kGeom);
    const FootTarget w = swing_target(gp.stance_fraction + eps, cmd, leg, gp, kGeom);
    EXPECT_LE((s.r_ref - w.r_ref).norm(), 1e-8);
    EXPECT_LE((s.v_ref - w.v_ref).norm(), 1e-6);
    // Touchdown.
    const FootTarget w1 = swing_target(1.0 - eps, cmd, leg, gp, kGeom);
    const FootTarget s0 = stance_target(0.0, cmd, leg, gp, kGeom);
    EXPECT_LE((w1.r_ref - s0.r_ref).norm(), 1e-8);
    EXPECT_LE((w1.v_ref - s0.v_ref).norm(), 1e-6);
  }
}

TEST(Gait, SwingVelocityIsDerivativeOfPosition) {
  const GaitParams gp;
  const VelocityCommand cmd{0.6, 0.0, -0.3};
  const double dphase = 1e-7;
  for (double phase = gp.stance_fraction + 0.01; phase < 0.99; phase += 0.05) {
    const FootTarget a = swing_target(phase - dphase, cmd, Leg::BR, gp, kGeom);
    const FootTarget b = swing_target(phase + dphase, cmd, Leg::BR, gp, kGeom);
    const FootTarget m = swing_target(phase, cmd, Leg::BR, gp, kGeom);
    const Vec3 fd = (b.r_ref - a.r_ref) / (2.0 * dphase / gp.frequency);
    EXPECT_LE((fd - m.v_ref).norm(), 1e-5) << phase;
  }
}

TEST(Gait, SwingApexInPlace) {
  const GaitParams gp;
  const double mid = 0.5 * (1.0 + gp.stance_fraction);
  const FootTarget apex = swing_target(mid, VelocityCommand{}, Leg::FR, gp, kGeom);
  EXPECT_NEAR(apex.r_ref.z(), -gp.stand_height + gp.step_height, 1e-12);
  EXPECT_LE((apex.r_ref.head<2>() - neutral_foothold(Leg::FR, gp, kGeom).head<2>()).norm(), 1e-12);
}

TEST(Gait, StanceLegsCarryBodyWeight) {
  const GaitParams gp;
  const VelocityCommand cmd{0.5, 0.0, 0.0};
  for (int k = 0; k < 500; ++k) {
    const LegCommands legs = controller_step(0.002 * k, cmd, gp, kGeom);
    double fz = 0.0;
    for (const LegCommand& c : legs) fz += std::get<FootCommand>(c).f_ff.z();
    ASSERT_NEAR(-fz, kGeom.body_mass * kGravity, 1e-9);
  }
}

TEST(Gait, ZeroCommandWithoutStepHeightStandsOnAllFeet) {
  GaitParams gp;
  gp.step_height = 0.0;
  const LegCommands legs = controller_step(0.37, VelocityCommand{}, gp, kGeom);
  for (Leg leg : kAllLegs) {
    const auto& fc = std::get<FootCommand>(legs[index(leg)]);
    EXPECT_NEAR(fc.f_ff.z(), -kGeom.body_mass * kGravity / 4.0, 1e-12);
    EXPECT_LE((fc.r_ref - neutral_foothold(leg, gp, kGeom)).norm(), 1e-12);
    EXPECT_EQ(fc.v_ref, Vec3::Zero());
  }
}

TEST(Gait, ZeroCommandWithStepHeightMarchesInPlace) {
  const GaitParams gp;
  const LegCommands legs = controller_step(0.0, VelocityCommand{}, gp, kGeom);
  int swinging = 0;
  for (const LegCommand& c : legs) swinging += std::get<FootCommand>(c).f_ff.z() == 0.0 ? 1 : 0;
  EXPECT_EQ(swinging, 0);  // t = 0 sits in the four-foot overlap at 0.7 duty
  const LegCommands later = controller_step(0.2, VelocityCommand{}, gp, kGeom);
  swinging = 0;
  for (const LegCommand& c : later) swinging += std::get<FootCommand>(c).f_ff.z() == 0.0 ? 1 : 0;
  EXPECT_EQ(swinging, 2);
}

TEST(Gait, UnreachableTargetsThrow) {
  const GaitParams gp;
  const VelocityCommand fast{8.0, 0.0, 0.0};
  EXPECT_THROW(controller_step(0.0, fast, gp, kGeom), TargetUnreachable);
}

TEST(Gait, Validation) {
  GaitParams gp;
  EXPECT_NO_THROW(gp.validate(kGeom));
  gp.stance_fraction = 1.0;
  EXPECT_THROW(gp.validate(kGeom), ConfigError);
  gp = GaitParams{};
  gp.frequency = 0.0;
  EXPECT_THROW(gp.validate(kGeom), ConfigError);
  gp = GaitParams{};
  gp.stand_height = 0.25;
  EXPECT_THROW(gp.validate(kGeom), ConfigError);
  gp = GaitParams{};
  gp.phase_offsets[1] = 1.0;
  EXPECT_THROW(gp.validate(kGeom), ConfigError);
}

}  // namespace
}  // namespace quadbench
