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

// Benchmark scoring and offline metrics. Everything here is a pure function
// of a TrialLog, so a stored log always reproduces its score.
//
// Sprint: score = course_length / t_cross (m/s), t_cross being the first
// tick whose forward displacement reaches the course length.
// Scramble: score = time (s) at which the base first crosses finish_x,
// linearly interpolated between the adjacent ticks.

#ifndef QUADBENCH_BENCH_HPP_
#define QUADBENCH_BENCH_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quadbench/actuator.hpp"
#include "quadbench/trial_log.hpp"

namespace quadbench {

inline constexpr double kAtRestSpeed = 1e-3;       // m/s
inline constexpr double kMinCotDisplacement = 0.1;  // m

// Throws NotStartedAtRest or Dnf.
double sprint_score(const TrialLog& log);
double scramble_score(const TrialLog& log);
double score(const TrialLog& log);

// Higher is better for Sprint, lower for Scramble.
bool better_score(Task task, double a, double b);

// Sum over motors of i^2 R + k_t i (gear_ratio * omega_output). Negative
// (regenerating) contributions are kept.
double electrical_power(std::span<const double> currents, std::span<const double> output_speeds,
                        const ActuatorParams& params);
double motor_electrical_power(double current, double output_speed, const ActuatorParams& params);

// Trapezoidal integral of the total logged power (signed).
double logged_energy(const TrialLog& log);

// Trapezoidal integral of max(P_total, 0) over m g d. Throws
// InsufficientDisplacement when the net horizontal displacement is < 0.1 m.
double cost_of_transport(const TrialLog& log);

// RMS tilt of body z from world vertical over all ticks (rad).
double orientation_error(const TrialLog& log);

double mean_power(const TrialLog& log);

struct TrialMetrics {
  double mean_power_w = 0.0;
  std::optional<double> cost_of_transport;
  double orientation_error_rad = 0.0;
};

TrialMetrics trial_metrics(const TrialLog& log);

struct TrialResult {
  std::uint64_t seed = 0;
  bool completed = false;
  double score = 0.0;         // valid when completed
  std::string dnf_reason;
  TrialMetrics metrics;
};

TrialResult evaluate_trial(const TrialLog& log);

struct Statistics {
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // sample (n - 1); 0 for a single trial
  bool std_defined = false;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double iqr = 0.0;
};

// Linear-interpolation quantile on sorted data (position (n - 1) p).
double quantile_sorted(std::span<const double> sorted, double p);

// Precondition: at least one score.
Statistics aggregate(std::span<const double> scores);

struct BenchmarkResult {
  Task task = Task::Sprint;
  std::vector<TrialResult> trials;
  Statistics stats;        // over completed trials only
  std::size_t dnf_count = 0;
};

BenchmarkResult summarize(Task task, std::vector<TrialResult> trials);

struct LeaderboardMeta {
  std::string controller;
  std::string config_hash;
  std::string tool_version;
};

struct LeaderboardEntry {
  Task task = Task::Sprint;
  LeaderboardMeta meta;
  std::vector<double> scores;
  std::size_t dnf_count = 0;
  Statistics stats;

  bool operator==(const LeaderboardEntry& other) const;
};

LeaderboardEntry make_leaderboard_entry(const BenchmarkResult& result, const LeaderboardMeta& meta);
std::string export_leaderboard(const LeaderboardEntry& entry);
// Throws ConfigError on schema violations (e.g. missing config_hash).
LeaderboardEntry parse_leaderboard(const std::string& json_text);
// Best first: Sprint by mean descending, Scramble by mean ascending.
void sort_leaderboard(std::vector<LeaderboardEntry>& entries);

// Per-batch summary CSV with a leading "# quadbench ..." provenance line.
std::string summary_csv(const BenchmarkResult& result, const LeaderboardMeta& meta);

}  // namespace quadbench

#endif  // QUADBENCH_BENCH_HPP_
