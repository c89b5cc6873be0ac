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

// Run configuration: one flat JSON document with fixed sections. Missing keys
// take defaults; unknown keys are rejected. The config hash is FNV-1a 64 over
// the canonical form (fully resolved, keys sorted, compact).

#ifndef QUADBENCH_CONFIG_HPP_
#define QUADBENCH_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "quadbench/actuator.hpp"
#include "quadbench/control.hpp"
#include "quadbench/episode.hpp"
#include "quadbench/gait.hpp"
#include "quadbench/kinematics.hpp"
#include "quadbench/sim.hpp"
#include "quadbench/terrain.hpp"
#include "quadbench/trial_log.hpp"

namespace quadbench {

inline constexpr int kConfigSchemaVersion = 1;

std::string_view tool_version();

struct SprintSettings {
  double course_length = 5.0;  // m
  double target_speed = 0.75;  // m/s
  double ramp_time = 1.0;      // s
  double duration = 20.0;      // s, DNF beyond this
  double heading_gain = 1.0;   // 1/s
};

struct ScrambleSettings {
  std::vector<Obstacle> obstacles = scramble_terrain().obstacles;
  double finish_x = 5.0;
  double target_speed = 0.5;
  double ramp_time = 1.0;
  double duration = 60.0;
  double heading_gain = 1.0;
};

struct RunSettings {
  std::uint64_t seed = 1;
  int trials = 5;
  std::string output_dir = "quadbench_out";
  std::string controller = "reference_trot";
};

struct RunConfig {
  int schema_version = kConfigSchemaVersion;
  RobotGeometry geometry;
  ActuatorParams actuator;
  ImpedanceGains gains;
  GaitParams gait;
  Terrain contact;  // contact parameters; obstacles come from the task
  SimParams sim;
  SprintSettings sprint;
  ScrambleSettings scramble;
  RunSettings run;

  // Throws ConfigError naming the first invalid key.
  void validate() const;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

std::string to_json(const RunConfig& config, int indent = 2);
std::string canonical_form(const RunConfig& config);
std::string config_hash(const RunConfig& config);
std::uint64_t fnv1a64(std::string_view bytes);

// {"gait": {...}} fragment, suitable for merging back into a config file.
std::string gait_fragment(const GaitParams& gait);

// Terrain and finish condition for a task under this config.
Terrain task_terrain(const RunConfig& config, Task task);
EpisodeSetup make_episode_setup(const RunConfig& config, Task task);
ReferenceTrotController make_reference_controller(const RunConfig& config, Task task);
FinishPredicate make_finish_predicate(const RunConfig& config, Task task);
double task_duration(const RunConfig& config, Task task);

// One seeded trial of the reference controller on `task`.
TrialLog run_trial(const RunConfig& config, Task task, std::uint64_t seed);

}  // namespace quadbench

#endif  // QUADBENCH_CONFIG_HPP_
