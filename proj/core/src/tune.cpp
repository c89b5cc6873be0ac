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

#include "quadbench/tune.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "json.hpp"
#include "quadbench/bench.hpp"
#include "quadbench/errors.hpp"
#include "quadbench/rng.hpp"

namespace quadbench {

using nlohmann::json;

void SearchSpace::validate(const RobotGeometry& geom) const {
  const char* names[kTuneDims] = {"frequency", "step_height", "stance_fraction", "stand_height"};
  const auto iv = intervals();
  for (std::size_t d = 0; d < kTuneDims; ++d) {
    if (!(iv[d].lo < iv[d].hi)) {
      throw ConfigError(std::string("search space '") + names[d] + "' needs lo < hi");
    }
  }
  if (!(frequency.lo > 0.0)) throw ConfigError("search space 'frequency' must be > 0");
  if (!(stance_fraction.lo > 0.0 && stance_fraction.hi < 1.0)) {
    throw ConfigError("search space 'stance_fraction' must lie inside (0, 1)");
  }
  if (!(step_height.lo >= 0.0)) throw ConfigError("search space 'step_height' must be >= 0");
  for (double h : {stand_height.lo, stand_height.hi}) {
    GaitParams gp;
    gp.stand_height = h;
    for (Leg leg : kAllLegs) {
      if (!is_reachable(leg, neutral_foothold(leg, gp, geom), geom)) {
        throw ConfigError("search space 'stand_height' leaves the leg workspace");
      }
    }
  }
}

std::array<Interval, kTuneDims> SearchSpace::intervals() const {
  return {frequency, step_height, stance_fraction, stand_height};
}

bool SearchSpace::contains(const GaitParams& gp) const {
  const TuneVector x = to_vector(gp);
  const auto iv = intervals();
  for (std::size_t d = 0; d < kTuneDims; ++d) {
    if (!iv[d].contains(x[d])) return false;
  }
  return true;
}

TuneVector to_vector(const GaitParams& gp) {
  return {gp.frequency, gp.step_height, gp.stance_fraction, gp.stand_height};
}

GaitParams from_vector(const TuneVector& x, const GaitParams& base) {
  GaitParams gp = base;
  gp.frequency = x[0];
  gp.step_height = x[1];
  gp.stance_fraction = x[2];
  gp.stand_height = x[3];
  return gp;
}

std::string_view method_name(TuneMethod m) {
  return m == TuneMethod::RandomSearch ? "random-search" : "cross-entropy";
}

TuneMethod parse_method(std::string_view name) {
  if (name == "random-search") return TuneMethod::RandomSearch;
  if (name == "cross-entropy") return TuneMethod::CrossEntropy;
  throw ConfigError("unknown tuning method '" + std::string(name) +
                    "' (expected random-search or cross-entropy)");
}

double worst_score(const RunConfig& config, Task task) {
  return task == Task::Scramble ? config.scramble.duration : 0.0;
}

Evaluation evaluate(const GaitParams& params, Task task, std::uint64_t seed,
                    const RunConfig& config, const SearchSpace& space) {
  if (!space.contains(params)) throw PreconditionError("gait parameters lie outside the search space");
  if (task == Task::Custom) throw PreconditionError("tuning needs the sprint or scramble task");
  Evaluation ev;
  ev.params = params;
  ev.seed = seed;
  RunConfig cfg = config;
  cfg.gait = params;
  try {
    const TrialResult r = evaluate_trial(run_trial(cfg, task, seed));
    ev.dnf = !r.completed;
    ev.score = r.completed ? r.score : worst_score(config, task);
  } catch (const NumericalDivergence& e) {
    std::cerr << "quadbench: candidate diverged (seed " << seed << "): " << e.what() << '\n';
    ev.diverged = true;
    ev.dnf = true;
    ev.score = worst_score(config, task);
  }
  return ev;
}

namespace {

std::vector<Evaluation> evaluate_batch(const std::vector<GaitParams>& batch,
                                       const std::vector<std::uint64_t>& seeds,
                                       const Objective& objective, std::size_t threads) {
  std::vector<Evaluation> out(batch.size());
  if (threads <= 1 || batch.size() <= 1) {
    for (std::size_t k = 0; k < batch.size(); ++k) out[k] = objective(batch[k], seeds[k]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < std::min(threads, batch.size()); ++w) {
      workers.emplace_back([&] {
        for (std::size_t k = next++; k < batch.size(); k = next++) {
          try {
            out[k] = objective(batch[k], seeds[k]);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

double truncated_normal(double mean, double std, const Interval& iv, std::mt19937_64& rng) {
  if (!(std > 0.0)) return std::clamp(mean, iv.lo, iv.hi);
  std::normal_distribution<double> n(mean, std);
  for (int tries = 0; tries < 1000; ++tries) {
    const double x = n(rng);
    if (iv.contains(x)) return x;
  }
  return std::clamp(mean, iv.lo, iv.hi);
}

}  // namespace

TuneReport optimize(const SearchSpace& space, Task task, const TuneOptions& options,
                    const RunConfig& config, const Objective& objective_in) {
  space.validate(config.geometry);
  if (options.budget < 1) throw PreconditionError("tuning budget must be >= 1");
  if (options.population < 1) throw PreconditionError("population must be >= 1");
  if (options.method == TuneMethod::CrossEntropy && options.budget < options.population) {
    throw PreconditionError("cross-entropy needs budget >= population size");
  }
  if (!(options.elite_fraction > 0.0 && options.elite_fraction <= 1.0)) {
    throw PreconditionError("elite fraction must lie in (0, 1]");
  }

  const Objective objective =
      objective_in ? objective_in : [&](const GaitParams& gp, std::uint64_t seed) {
        return evaluate(gp, task, seed, config, space);
      };
  const std::size_t threads =
      options.threads > 0 ? options.threads
                          : std::max<std::size_t>(1, std::thread::hardware_concurrency());

  TuneReport report;
  report.method = options.method;
  report.task = task;
  report.seed = options.seed;
  report.budget = options.budget;
  report.config_hash = config_hash(config);

  const auto iv = space.intervals();
  std::mt19937_64 sampler(derive_seed(options.seed, SeedStream::kSampler, 0));

  TuneVector mean = to_vector(config.gait);
  TuneVector stdev{};
  for (std::size_t d = 0; d < kTuneDims; ++d) {
    mean[d] = std::clamp(mean[d], iv[d].lo, iv[d].hi);
    stdev[d] = 0.25 * iv[d].width();
  }

  bool have_best = false;
  std::size_t iteration = 0;
  while (report.evaluations_used < options.budget) {
    const std::size_t n = std::min(options.population, options.budget - report.evaluations_used);
    std::vector<GaitParams> batch;
    std::vector<std::uint64_t> seeds;
    for (std::size_t k = 0; k < n; ++k) {
      TuneVector x{};
      if (options.method == TuneMethod::CrossEntropy && iteration == 0 && k == 0) {
        x = mean;  // the starting point is always scored
      } else {
        for (std::size_t d = 0; d < kTuneDims; ++d) {
          if (options.method == TuneMethod::RandomSearch) {
            x[d] = std::uniform_real_distribution<double>(iv[d].lo, iv[d].hi)(sampler);
          } else {
            x[d] = truncated_normal(mean[d], stdev[d], iv[d], sampler);
          }
        }
      }
      batch.push_back(from_vector(x, config.gait));
      seeds.push_back(derive_seed(options.seed, SeedStream::kCandidate,
                                  report.evaluations_used + k));
    }

    std::vector<Evaluation> evals = evaluate_batch(batch, seeds, objective, threads);

    IterationStats it;
    it.iteration = iteration;
    double sum = 0.0;
    for (std::size_t k = 0; k < evals.size(); ++k) {
      const Evaluation& ev = evals[k];
      sum += ev.score;
      if (k == 0 || better_score(task, ev.score, it.best_in_iteration)) {
        it.best_in_iteration = ev.score;
      }
      if (!have_best || better_score(task, ev.score, report.best_score)) {
        report.best_score = ev.score;
        report.best_params = ev.params;
        have_best = true;
      }
      report.evaluations.push_back(ev);
    }
    report.evaluations_used += evals.size();
    it.evaluations = report.evaluations_used;
    it.mean_score = sum / static_cast<double>(evals.size());
    it.best_so_far = report.best_score;

    if (options.method == TuneMethod::CrossEntropy) {
      it.sampler_std = stdev;
      std::vector<std::size_t> order(evals.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return better_score(task, evals[a].score, evals[b].score);
      });
      const auto n_elite = std::max<std::size_t>(
          1, static_cast<std::size_t>(
                 std::lround(options.elite_fraction * static_cast<double>(evals.size()))));
      TuneVector elite_mean{};
      for (std::size_t e = 0; e < n_elite; ++e) {
        const TuneVector x = to_vector(evals[order[e]].params);
        for (std::size_t d = 0; d < kTuneDims; ++d) elite_mean[d] += x[d] / n_elite;
      }
      for (std::size_t d = 0; d < kTuneDims; ++d) {
        double var = 0.0;
        for (std::size_t e = 0; e < n_elite; ++e) {
          const double dx = to_vector(evals[order[e]].params)[d] - elite_mean[d];
          var += dx * dx / n_elite;
        }
        // Sampling spread never grows between iterations.
        stdev[d] = std::min(stdev[d], std::sqrt(var));
        mean[d] = elite_mean[d];
      }
    }
    report.history.push_back(it);
    ++iteration;
  }
  return report;
}

namespace {

json gait_json(const GaitParams& g) {
  return {{"frequency", g.frequency},       {"step_height", g.step_height},
          {"stance_fraction", g.stance_fraction}, {"phase_offsets", g.phase_offsets},
          {"stand_height", g.stand_height}, {"stance_depth", g.stance_depth}};
}

}  // namespace

std::string tune_report_json(const TuneReport& r) {
  json history = json::array();
  for (const IterationStats& it : r.history) {
    history.push_back({{"iteration", it.iteration},
                       {"evaluations", it.evaluations},
                       {"mean_score", it.mean_score},
                       {"best_in_iteration", it.best_in_iteration},
                       {"best_so_far", it.best_so_far},
                       {"sampler_std", it.sampler_std}});
  }
  json evals = json::array();
  for (const Evaluation& ev : r.evaluations) {
    evals.push_back({{"params", gait_json(ev.params)},
                     {"score", ev.score},
                     {"seed", ev.seed},
                     {"dnf", ev.dnf},
                     {"diverged", ev.diverged}});
  }
  json j{{"schema_version", 1},
         {"tool_version", std::string(tool_version())},
         {"config_hash", r.config_hash},
         {"method", std::string(method_name(r.method))},
         {"task", std::string(task_name(r.task))},
         {"seed", r.seed},
         {"budget", r.budget},
         {"evaluations_used", r.evaluations_used},
         {"best_score", r.best_score},
         {"best_params", gait_json(r.best_params)},
         {"history", history},
         {"evaluations", evals}};
  return j.dump(2);
}

}  // namespace quadbench
