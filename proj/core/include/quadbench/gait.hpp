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

// Foot trajectory generator for the reference trot.
//
// Each leg runs a phase clock frac(t * frequency + offset). Phases below
// stance_fraction are stance: the foot moves with the rigid-body velocity
// field opposite the commanded planar twist, centred on the neutral footfall
// under the hip. The remaining phase is swing: a cubic Hermite arc from the
// liftoff point to the predicted touchdown point (matching stance position
// and velocity at both ends) plus a sine-squared vertical bump.

#ifndef QUADBENCH_GAIT_HPP_
#define QUADBENCH_GAIT_HPP_

#include <array>

#include "quadbench/control.hpp"
#include "quadbench/kinematics.hpp"

namespace quadbench {

struct GaitParams {
  double frequency = 4.0;        // Hz, full cycle
  double step_height = 0.04;     // m
  double stance_fraction = 0.7;   // short four-foot overlaps keep the base level
  std::array<double, kNumLegs> phase_offsets{0.0, 0.5, 0.5, 0.0};  // FR FL BR BL
  double stand_height = 0.14;    // m, hip to ground
  double stance_depth = 0.0;     // m, push-down during stance

  // Throws ConfigError when a field is out of range or the neutral stance
  // is outside the leg workspace.
  void validate(const RobotGeometry& geom) const;
};

struct VelocityCommand {
  double v_x = 0.0;     // m/s
  double v_y = 0.0;     // m/s
  double omega_z = 0.0; // rad/s
};

struct LegPhase {
  double phase = 0.0;  // [0, 1)
  bool in_stance = true;
};

struct FootTarget {
  Vec3 r_ref = Vec3::Zero();
  Vec3 v_ref = Vec3::Zero();
};

LegPhase leg_phase(double t, Leg leg, const GaitParams& gp);

Vec3 neutral_foothold(Leg leg, const GaitParams& gp, const RobotGeometry& geom);

// Horizontal velocity a ground-fixed point at body-frame position r has when
// the body moves with `cmd`: -(v + omega_z z x r). z component is zero.
Vec3 stance_velocity(const Vec3& r, const VelocityCommand& cmd);

FootTarget stance_target(double phase, const VelocityCommand& cmd, Leg leg, const GaitParams& gp,
                         const RobotGeometry& geom);

FootTarget swing_target(double phase, const VelocityCommand& cmd, Leg leg, const GaitParams& gp,
                        const RobotGeometry& geom);

// Target for whichever half of the cycle `phase` falls in.
FootTarget foot_target(double phase, const VelocityCommand& cmd, Leg leg, const GaitParams& gp,
                       const RobotGeometry& geom);

// Task-space impedance commands for all legs. Stance legs carry a feedforward
// F_ff = (0, 0, -m g / n_stance): the force the foot presses into the ground,
// which the ground returns as weight support. A zero command with zero
// step height is a stand with all four feet loaded. Throws TargetUnreachable if a
// target leaves a leg's workspace.
LegCommands controller_step(double t, const VelocityCommand& cmd, const GaitParams& gp,
                            const RobotGeometry& geom);

}  // namespace quadbench

#endif  // QUADBENCH_GAIT_HPP_
