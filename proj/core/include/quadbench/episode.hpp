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

// Two-rate episode loop: a high-level controller at SimParams::high_level_hz
// produces leg commands; the low-level loop runs attitude estimation,
// low_level_step and Simulator::step every tick and logs every tick.

#ifndef QUADBENCH_EPISODE_HPP_
#define QUADBENCH_EPISODE_HPP_

#include <cstdint>
#include <functional>

#include "quadbench/control.hpp"
#include "quadbench/gait.hpp"
#include "quadbench/sim.hpp"
#include "quadbench/trial_log.hpp"

namespace quadbench {

struct Observation {
  double t = 0.0;
  JointState joints;
  ImuSample imu;
  Quat attitude = Quat::Identity();  // filter estimate
};

struct HighLevelCommand {
  ControlMode mode = ControlMode::TaskSpaceImpedance;
  LegCommands legs;
};

using HighLevelController = std::function<HighLevelCommand(const Observation&)>;

// Returns true once the task's finish condition holds.
using FinishPredicate = std::function<bool(const SimState&)>;

struct EpisodeSetup {
  RobotGeometry geometry;
  ActuatorParams actuator;
  ImpedanceGains gains;
  Terrain terrain;
  SimParams sim;
  SimState initial;
  TrialMeta meta;
};

// Fully deterministic for a fixed seed. An exception thrown by the
// controller ends the episode as DNF with the message as reason;
// NumericalDivergence from the simulator propagates.
TrialLog run_episode(const EpisodeSetup& setup, const HighLevelController& controller,
                     double duration, std::uint64_t seed, const FinishPredicate& finish = {});

// Reference trot: ramps forward speed up to a target and holds heading with
// a proportional yaw-rate command from the attitude estimate. Gives up
// (throws, so the episode ends as DNF) once the estimated tilt passes
// max_tilt: without body collision a flipped robot could still crawl.
class ReferenceTrotController {
 public:
  struct Profile {
    double target_speed = 0.6;   // m/s
    double ramp_time = 1.0;      // s, 0 -> target
    double lateral_speed = 0.0;  // m/s
    double yaw_rate = 0.0;       // rad/s, open-loop turn when heading_gain == 0
    double heading_gain = 1.0;   // 1/s
    double max_yaw_rate = 0.5;   // rad/s, heading correction limit
    double max_tilt = 1.0;       // rad
  };

  ReferenceTrotController(GaitParams gait, RobotGeometry geometry, Profile profile);

  HighLevelCommand operator()(const Observation& obs) const;
  VelocityCommand velocity_at(double t, const Quat& attitude) const;

 private:
  GaitParams gait_;
  RobotGeometry geometry_;
  Profile profile_;
};

}  // namespace quadbench

#endif  // QUADBENCH_EPISODE_HPP_
