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

#include <benchmark/benchmark.h>

#include <array>

#include "quadbench/actuator.hpp"
#include "quadbench/config.hpp"
#include "quadbench/control.hpp"
#include "quadbench/gait.hpp"
#include "quadbench/kinematics.hpp"
#include "quadbench/sim.hpp"

namespace quadbench {
namespace {

const RobotGeometry kGeom;

void BM_ForwardKinematics(benchmark::State& state) {
  LegJoints q{0.1, 0.4, 1.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_kinematics(Leg::FL, q, kGeom));
    q[1] += 1e-9;
  }
}
BENCHMARK(BM_ForwardKinematics);

void BM_InverseKinematics(benchmark::State& state) {
  Vec3 p = forward_kinematics(Leg::FL, LegJoints{0.1, 0.4, 1.2}, kGeom);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse_kinematics(Leg::FL, p, kGeom));
    p.x() += 1e-12;
  }
}
BENCHMARK(BM_InverseKinematics);

void BM_Jacobian(benchmark::State& state) {
  const LegJoints q{0.1, 0.4, 1.2};
  for (auto _ : state) benchmark::DoNotOptimize(leg_jacobian(Leg::BR, q, kGeom));
}
BENCHMARK(BM_Jacobian);

void BM_CurrentForTorque(benchmark::State& state) {
  const ActuatorParams p;
  double tau = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(current_for_torque(tau, 3.0, p));
    tau += 1e-9;
  }
}
BENCHMARK(BM_CurrentForTorque);

// One controller tick: gait targets for four legs then the impedance loop.
void BM_ControllerTick(benchmark::State& state) {
  const GaitParams gp;
  const ImpedanceGains gains;
  const ActuatorParams act;
  const Simulator sim(kGeom, act, flat_terrain(), SimParams{}, 1);
  const JointState joints = sim.standing_state(gp.stand_height).joints();
  double t = 0.0;
  for (auto _ : state) {
    const LegCommands legs = controller_step(t, VelocityCommand{0.5, 0.0, 0.0}, gp, kGeom);
    benchmark::DoNotOptimize(
        low_level_step(ControlMode::TaskSpaceImpedance, legs, joints, kGeom, gains, act));
    t += 0.001;
  }
}
BENCHMARK(BM_ControllerTick);

void BM_SimStepStanding(benchmark::State& state) {
  Simulator sim(kGeom, ActuatorParams{}, flat_terrain(), SimParams{}, 1);
  const SimState start = sim.standing_state(0.14);
  std::array<double, kNumJoints> currents{};
  for (std::size_t k = 0; k < kNumJoints; ++k) currents[k] = start.actuators[k].i_filtered;
  SimState s = start;
  for (auto _ : state) {
    s = sim.step(s, currents);
    if (s.t > 1.0) s = start;
  }
}
BENCHMARK(BM_SimStepStanding);

// Full one-second Sprint episode: 1000 simulator steps plus logging.
void BM_SprintEpisodeSecond(benchmark::State& state) {
  RunConfig config;
  config.sprint.duration = 1.0;
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(config, Task::Sprint, seed++));
}
BENCHMARK(BM_SprintEpisodeSecond)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace quadbench

BENCHMARK_MAIN();
