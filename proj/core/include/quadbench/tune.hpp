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

// Derivative-free gait tuning: seeded random search and the cross-entropy
// method over (frequency, step_height, stance_fraction, stand_height).
//
// Candidate k of a run is evaluated with seed derive_seed(seed, kCandidate, k),
// so results do not depend on how evaluations are scheduled across threads.

#ifndef QUADBENCH_TUNE_HPP_
#define QUADBENCH_TUNE_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "quadbench/config.hpp"
#include "quadbench/gait.hpp"
#include "quadbench/trial_log.hpp"

namespace quadbench {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
  double width() const { return hi - lo; }
};

inline constexpr std::size_t kTuneDims = 4;

struct SearchSpace {
  Interval frequency{0.5, 4.0};
  Interval step_height{0.0, 0.08};
  Interval stance_fraction{0.3, 0.8};
  Interval stand_height{0.10, 0.16};

  // Throws ConfigError if an interval is empty or stand heights leave the
  // workspace.
  void validate(const RobotGeometry& geom) const;
  bool contains(const GaitParams& gp) const;

  std::array<Interval, kTuneDims> intervals() const;
};

using TuneVector = std::array<double, kTuneDims>;

TuneVector to_vector(const GaitParams& gp);
GaitParams from_vector(const TuneVector& x, const GaitParams& base);

enum class TuneMethod { RandomSearch, CrossEntropy };
std::string_view method_name(TuneMethod m);
TuneMethod parse_method(std::string_view name);  // throws ConfigError

// Worst representable score for a task: 0 m/s for Sprint, the episode
// duration for Scramble.
double worst_score(const RunConfig& config, Task task);

struct Evaluation {
  GaitParams params;
  double score = 0.0;
  std::uint64_t seed = 0;
  bool dnf = false;
  bool diverged = false;
};

// One seeded episode of the reference controller with `params`.
// Throws PreconditionError when params lie outside `space`; DNF and
// numerical divergence map to worst_score.
Evaluation evaluate(const GaitParams& params, Task task, std::uint64_t seed,
                    const RunConfig& config, const SearchSpace& space);

struct IterationStats {
  std::size_t iteration = 0;
  std::size_t evaluations = 0;  // cumulative
  double mean_score = 0.0;
  double best_in_iteration = 0.0;
  double best_so_far = 0.0;
  TuneVector sampler_std{};  // CEM sampling std; zeros for random search
};

struct TuneReport {
  TuneMethod method = TuneMethod::CrossEntropy;
  Task task = Task::Sprint;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::size_t evaluations_used = 0;
  GaitParams best_params;
  double best_score = 0.0;
  std::vector<IterationStats> history;
  std::vector<Evaluation> evaluations;
  std::string config_hash;
};

struct TuneOptions {
  TuneMethod method = TuneMethod::CrossEntropy;
  std::size_t budget = 200;
  std::uint64_t seed = 1;
  std::size_t population = 16;
  double elite_fraction = 0.2;
  std::size_t threads = 0;  // 0 = hardware concurrency
};

// Objective hook, mainly for tests; the default runs `evaluate`.
using Objective = std::function<Evaluation(const GaitParams&, std::uint64_t seed)>;

TuneReport optimize(const SearchSpace& space, Task task, const TuneOptions& options,
                    const RunConfig& config, const Objective& objective = {});

std::string tune_report_json(const TuneReport& report);

}  // namespace quadbench

#endif  // QUADBENCH_TUNE_HPP_
