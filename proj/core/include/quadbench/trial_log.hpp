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

// Time-series record of one benchmark episode and its JSONL encoding.
//
// JSONL layout (schema version 1), one JSON object per line:
//   {"type":"header", "schema_version", "tool_version", "task", "config_hash",
//    "seed", "controller", "dt", "body_mass", "k_t", "gear_ratio",
//    "winding_resistance", "course_length", "finish_x"}
//   {"type":"tick", "t", "pos"[3], "quat"[w,x,y,z], "vel"[3], "omega"[3],
//    "q"[12], "qd"[12], "current"[12], "power"[12], "contact"[4],
//    "contact_force"[12], "target"[12]}                      (one per tick)
//   {"type":"outcome", "completed", "t_finish", "reason", "sim_energy_j",
//    "score"}                                                 (last line)
// Doubles are written with round-trip precision.

#ifndef QUADBENCH_TRIAL_LOG_HPP_
#define QUADBENCH_TRIAL_LOG_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quadbench/kinematics.hpp"

namespace quadbench {

inline constexpr int kTrialLogSchemaVersion = 1;

enum class Task { Sprint, Scramble, Custom };

std::string_view task_name(Task task);
Task parse_task(std::string_view name);  // throws ConfigError

struct TrialMeta {
  Task task = Task::Custom;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string controller = "reference_trot";
  double dt = 0.001;
  double body_mass = 2.1;
  double k_t = 0.0069;
  double gear_ratio = 36.0;
  double winding_resistance = 0.1;
  double course_length = 5.0;  // sprint distance
  double finish_x = 5.0;       // scramble finish line

  bool operator==(const TrialMeta&) const = default;
};

struct TickRecord {
  double t = 0.0;
  std::array<double, 3> pos{};
  std::array<double, 4> quat{1.0, 0.0, 0.0, 0.0};  // w x y z
  std::array<double, 3> vel{};
  std::array<double, 3> omega{};
  std::array<double, kNumJoints> q{};
  std::array<double, kNumJoints> qd{};
  std::array<double, kNumJoints> current{};
  std::array<double, kNumJoints> power{};
  std::array<bool, kNumLegs> contact{};
  std::array<double, kNumJoints> contact_force{};  // world frame, per foot xyz
  std::array<double, kNumJoints> target{};         // foot r_ref, body frame

  bool operator==(const TickRecord&) const = default;
};

struct Outcome {
  bool completed = false;
  double t_finish = 0.0;
  std::string reason;

  bool operator==(const Outcome&) const = default;
};

struct TrialLog {
  TrialMeta meta;
  std::vector<TickRecord> ticks;
  Outcome outcome;
  double sim_energy_j = 0.0;
  std::optional<double> score;

  bool operator==(const TrialLog&) const = default;
};

void write_jsonl(const TrialLog& log, std::ostream& out);
std::string to_jsonl(const TrialLog& log);

// Throws LogParseError with the offending line number on malformed or
// truncated input.
TrialLog read_jsonl(std::istream& in);
TrialLog parse_jsonl(const std::string& text);

}  // namespace quadbench

#endif  // QUADBENCH_TRIAL_LOG_HPP_
