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

// Low-level (1 kHz) control modes: torque passthrough, joint-space PD and
// task-space impedance. Every mode ends in the actuator friction inversion
// to produce per-motor current commands.

#ifndef QUADBENCH_CONTROL_HPP_
#define QUADBENCH_CONTROL_HPP_

#include <array>
#include <string_view>
#include <variant>

#include "quadbench/actuator.hpp"
#include "quadbench/kinematics.hpp"

namespace quadbench {

enum class ControlMode { TorquePassthrough, JointPD, TaskSpaceImpedance };

std::string_view mode_name(ControlMode mode);

struct ImpedanceGains {
  Vec3 kp_task{500.0, 500.0, 500.0};  // N/m
  Vec3 kd_task{20.0, 20.0, 20.0};     // Ns/m
  double kp_joint = 4.0;              // Nm/rad
  double kd_joint = 0.1;              // Nms/rad

  void validate() const;
};

struct TorqueCommand {
  Vec3 torque = Vec3::Zero();
};

struct JointCommand {
  LegJoints q_ref = LegJoints::Zero();
  LegJoints qd_ref = LegJoints::Zero();
};

struct FootCommand {
  Vec3 r_ref = Vec3::Zero();
  Vec3 v_ref = Vec3::Zero();
  Vec3 f_ff = Vec3::Zero();
};

using LegCommand = std::variant<TorqueCommand, JointCommand, FootCommand>;
using LegCommands = std::array<LegCommand, kNumLegs>;

ControlMode mode_of(const LegCommand& cmd);

// Measured joint state, legs in Leg order, joints (ab, hip, knee).
struct JointState {
  std::array<double, kNumJoints> q{};
  std::array<double, kNumJoints> qd{};

  LegJoints leg_q(Leg leg) const;
  LegJoints leg_qd(Leg leg) const;
};

// F = Kp (r_ref - r) + Kd (v_ref - v) + F_ff, diagonal gains.
Vec3 task_impedance_force(const Vec3& r_ref, const Vec3& r, const Vec3& v_ref, const Vec3& v,
                          const Vec3& f_ff, const ImpedanceGains& gains);

// tau = J^T F
Vec3 force_to_torque(const Mat3& jac, const Vec3& force);

Vec3 joint_pd(const LegJoints& q_ref, const LegJoints& q, const LegJoints& qd_ref,
              const LegJoints& qd, const ImpedanceGains& gains);

struct LowLevelOutput {
  std::array<double, kNumJoints> current{};
  std::array<double, kNumJoints> desired_torque{};
  std::array<bool, kNumJoints> saturated{};
};

// Throws CommandModeMismatch if any payload disagrees with `mode`.
LowLevelOutput low_level_step(ControlMode mode, const LegCommands& cmds, const JointState& state,
                              const RobotGeometry& geom, const ImpedanceGains& gains,
                              const ActuatorParams& params);

}  // namespace quadbench

#endif  // QUADBENCH_CONTROL_HPP_
