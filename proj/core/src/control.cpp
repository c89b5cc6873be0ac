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

#include "quadbench/control.hpp"

#include <cmath>
#include <string>

#include "quadbench/errors.hpp"

namespace quadbench {

std::string_view mode_name(ControlMode mode) {
  switch (mode) {
    case ControlMode::TorquePassthrough: return "torque_passthrough";
    case ControlMode::JointPD: return "joint_pd";
    case ControlMode::TaskSpaceImpedance: return "task_space_impedance";
  }
  return "?";
}

void ImpedanceGains::validate() const {
  auto nonneg = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string("gains.") + name + " must be nonnegative");
    }
  };
  for (int k = 0; k < 3; ++k) {
    nonneg(kp_task[k], "kp_task");
    nonneg(kd_task[k], "kd_task");
  }
  nonneg(kp_joint, "kp_joint");
  nonneg(kd_joint, "kd_joint");
}

ControlMode mode_of(const LegCommand& cmd) {
  switch (cmd.index()) {
    case 0: return ControlMode::TorquePassthrough;
    case 1: return ControlMode::JointPD;
    default: return ControlMode::TaskSpaceImpedance;
  }
}

LegJoints JointState::leg_q(Leg leg) const {
  const std::size_t b = 3 * index(leg);
  return {q[b], q[b + 1], q[b + 2]};
}

LegJoints JointState::leg_qd(Leg leg) const {
  const std::size_t b = 3 * index(leg);
  return {qd[b], qd[b + 1], qd[b + 2]};
}

Vec3 task_impedance_force(const Vec3& r_ref, const Vec3& r, const Vec3& v_ref, const Vec3& v,
                          const Vec3& f_ff, const ImpedanceGains& gains) {
  return gains.kp_task.cwiseProduct(r_ref - r) + gains.kd_task.cwiseProduct(v_ref - v) + f_ff;
}

Vec3 force_to_torque(const Mat3& jac, const Vec3& force) { return jac.transpose() * force; }

Vec3 joint_pd(const LegJoints& q_ref, const LegJoints& q, const LegJoints& qd_ref,
              const LegJoints& qd, const ImpedanceGains& gains) {
  return gains.kp_joint * (q_ref - q) + gains.kd_joint * (qd_ref - qd);
}

namespace {

Vec3 leg_torque(const LegCommand& cmd, Leg leg, const JointState& state,
                const RobotGeometry& geom, const ImpedanceGains& gains) {
  const LegJoints q = state.leg_q(leg);
  const LegJoints qd = state.leg_qd(leg);
  if (const auto* t = std::get_if<TorqueCommand>(&cmd)) return t->torque;
  if (const auto* j = std::get_if<JointCommand>(&cmd)) {
    return joint_pd(j->q_ref, q, j->qd_ref, qd, gains);
  }
  const auto& f = std::get<FootCommand>(cmd);
  const Mat3 jac = leg_jacobian(leg, q, geom);
  const Vec3 r = forward_kinematics(leg, q, geom);
  const Vec3 v = jac * qd;
  return force_to_torque(jac, task_impedance_force(f.r_ref, r, f.v_ref, v, f.f_ff, gains));
}

}  // namespace

LowLevelOutput low_level_step(ControlMode mode, const LegCommands& cmds, const JointState& state,
                              const RobotGeometry& geom, const ImpedanceGains& gains,
                              const ActuatorParams& params) {
  LowLevelOutput out;
  for (Leg leg : kAllLegs) {
    const LegCommand& cmd = cmds[index(leg)];
    if (mode_of(cmd) != mode) {
      throw CommandModeMismatch(std::string("leg ") + std::string(leg_name(leg)) + " carries a " +
                                std::string(mode_name(mode_of(cmd))) +
                                " payload while the active mode is " +
                                std::string(mode_name(mode)));
    }
    const Vec3 tau = leg_torque(cmd, leg, state, geom, gains);
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t k = 3 * index(leg) + j;
      const CurrentCommand cc = current_for_torque(tau[j], state.qd[k], params);
      out.desired_torque[k] = tau[j];
      out.current[k] = cc.current;
      out.saturated[k] = cc.saturated;
    }
  }
  return out;
}

}  // namespace quadbench
