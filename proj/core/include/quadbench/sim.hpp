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

// Fixed-step floating-base simulator.
//
// The base is a single rigid body carrying the full robot mass. Legs are
// massless: each joint integrates against the actuator's reflected output
// inertia, driven by the actuator output torque and by the contact force at
// the foot mapped through J^T. Contacts are penalty springs against the
// terrain; the base receives the contact forces at the foot positions.
//
// Semi-implicit Euler, except that contact damping is taken implicitly: one
// linear solve over base and joint velocities per step. Base translation
// adds the dt^2 a / 2 term so free flight is exact. Contact damping reflected
// onto the joints is integrated implicitly (one 3x3 solve per leg). A joint whose speed would be
// reversed by friction alone within one step is stopped instead (friction
// cannot inject energy). Joint speeds are clamped to the actuator speed
// limit.

#ifndef QUADBENCH_SIM_HPP_
#define QUADBENCH_SIM_HPP_

#include <array>
#include <cstdint>
#include <random>

#include <Eigen/Geometry>

#include "quadbench/actuator.hpp"
#include "quadbench/control.hpp"
#include "quadbench/kinematics.hpp"
#include "quadbench/terrain.hpp"

namespace quadbench {

using Quat = Eigen::Quaterniond;

struct SimParams {
  double dt = 0.001;                   // s, low-level period
  double high_level_hz = 100.0;
  bool stiction = true;
  double stiction_fraction = 0.28;     // of nominal torque
  double stiction_speed = 0.05;        // rad/s
  double imu_accel_noise = 0.0;        // m/s^2, 1-sigma
  double imu_gyro_noise = 0.0;         // rad/s, 1-sigma
  double filter_gain = 3.0;            // 1/s, complementary filter

  void validate() const;
};

struct SimState {
  Vec3 position = Vec3::Zero();            // world
  Quat orientation = Quat::Identity();     // body to world
  Vec3 linear_velocity = Vec3::Zero();     // world
  Vec3 angular_velocity = Vec3::Zero();    // body
  Vec3 linear_acceleration = Vec3::Zero(); // world, from the last step
  std::array<double, kNumJoints> q{};
  std::array<double, kNumJoints> qd{};
  std::array<ActuatorState, kNumJoints> actuators{};
  double t = 0.0;
  double electrical_energy = 0.0;  // J, accumulated per step

  JointState joints() const { return {q, qd}; }
  LegJoints leg_q(Leg leg) const;
};

struct StepDiagnostics {
  std::array<ContactResult, kNumLegs> contacts{};
  std::array<double, kNumJoints> output_torque{};
  double contact_dissipation = 0.0;   // W
  double actuator_dissipation = 0.0;  // W, friction + copper
  double electrical_power = 0.0;      // W
};

class Simulator {
 public:
  Simulator(RobotGeometry geom, ActuatorParams actuator, Terrain terrain, SimParams params,
            std::uint64_t seed);

  // Advances one low-level period with the given motor current commands.
  // Throws NumericalDivergence if the state leaves the sanity bounds.
  SimState step(const SimState& state, const std::array<double, kNumJoints>& currents,
                StepDiagnostics* diag = nullptr);

  // Standing pose with feet at `stand_height` below the hips, resting at the
  // static contact penetration, actuator currents preloaded for weight support.
  SimState standing_state(double stand_height) const;

  Vec3 foot_position_world(const SimState& state, Leg leg) const;

  const RobotGeometry& geometry() const { return geom_; }
  const ActuatorParams& actuator() const { return actuator_; }
  const Terrain& terrain() const { return terrain_; }
  const SimParams& params() const { return params_; }

 private:
  RobotGeometry geom_;
  ActuatorParams actuator_;
  Terrain terrain_;
  SimParams params_;
  Vec3 inertia_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{-1.0, 1.0};
};

// Stiction disturbance for one joint: uniform in +-fraction*|nominal| when
// |omega| is below the stiction speed, else zero.
double stiction_torque(double nominal_torque, double omega, const SimParams& params,
                       double unit_draw);

struct ImuSample {
  Vec3 angular_rate = Vec3::Zero();    // body, rad/s
  Vec3 specific_force = Vec3::Zero();  // body, m/s^2
};

// Noise-free when both noise levels are zero (rng may then be null).
ImuSample imu_read(const SimState& state, const SimParams& params, std::mt19937_64* rng = nullptr);

// Complementary filter: gyro integration with the rate corrected by
// gain * (measured up x estimated up). gain = 0 is pure gyro integration.
Quat estimate_orientation(const Quat& prev, const ImuSample& imu, double dt, double gain);

// Angle between body z and world z.
double tilt_angle(const Quat& q);
double yaw_angle(const Quat& q);

}  // namespace quadbench

#endif  // QUADBENCH_SIM_HPP_
