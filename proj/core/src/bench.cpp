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

#include "quadbench/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Geometry>

#include "json.hpp"
#include "quadbench/errors.hpp"

namespace quadbench {

using nlohmann::json;

namespace {

void require_at_rest(const TrialLog& log) {
  if (log.ticks.empty()) throw Dnf("empty trial log");
  const auto& v = log.ticks.front().vel;
  const double speed = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (speed > kAtRestSpeed) {
    std::ostringstream os;
    os << "trial did not start at rest (initial speed " << speed << " m/s)";
    throw NotStartedAtRest(os.str());
  }
}

}  // namespace

double sprint_score(const TrialLog& log) {
  if (log.meta.task != Task::Sprint) throw PreconditionError("sprint_score needs a sprint log");
  require_at_rest(log);
  const TickRecord& first = log.ticks.front();
  const double length = log.meta.course_length;
  for (const TickRecord& r : log.ticks) {
    if (r.pos[0] - first.pos[0] >= length) return length / (r.t - first.t);
  }
  throw Dnf("sprint finish line never crossed");
}

double scramble_score(const TrialLog& log) {
  if (log.meta.task != Task::Scramble) {
    throw PreconditionError("scramble_score needs a scramble log");
  }
  require_at_rest(log);
  const double finish = log.meta.finish_x;
  for (std::size_t k = 1; k < log.ticks.size(); ++k) {
    const TickRecord& a = log.ticks[k - 1];
    const TickRecord& b = log.ticks[k];
    const double da = a.pos[0] - finish;
    const double db = b.pos[0] - finish;
    if (da < 0.0 && db >= 0.0) return a.t + (b.t - a.t) * (-da) / (db - da);
  }
  throw Dnf("scramble finish line never crossed");
}

double score(const TrialLog& log) {
  switch (log.meta.task) {
    case Task::Sprint: return sprint_score(log);
    case Task::Scramble: return scramble_score(log);
    case Task::Custom: break;
  }
  throw PreconditionError("custom-task logs have no benchmark score");
}

bool better_score(Task task, double a, double b) {
  return task == Task::Scramble ? a < b : a > b;
}

double motor_electrical_power(double current, double output_speed, const ActuatorParams& p) {
  return current * current * p.winding_resistance + p.k_t * current * p.gear_ratio * output_speed;
}

double electrical_power(std::span<const double> currents, std::span<const double> output_speeds,
                        const ActuatorParams& params) {
  if (currents.size() != output_speeds.size()) {
    throw PreconditionError("electrical_power: currents and speeds differ in length");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < currents.size(); ++k) {
    total += motor_electrical_power(currents[k], output_speeds[k], params);
  }
  return total;
}

namespace {

ActuatorParams params_from(const TrialMeta& m) {
  ActuatorParams p;
  p.k_t = m.k_t;
  p.gear_ratio = m.gear_ratio;
  p.winding_resistance = m.winding_resistance;
  return p;
}

double tick_power(const TickRecord& r, const ActuatorParams& p) {
  return electrical_power(r.current, r.qd, p);
}

}  // namespace

double logged_energy(const TrialLog& log) {
  const ActuatorParams p = params_from(log.meta);
  double energy = 0.0;
  for (std::size_t k = 1; k < log.ticks.size(); ++k) {
    const double dt = log.ticks[k].t - log.ticks[k - 1].t;
    energy += 0.5 * dt * (tick_power(log.ticks[k - 1], p) + tick_power(log.ticks[k], p));
  }
  return energy;
}

double cost_of_transport(const TrialLog& log) {
  if (log.ticks.size() < 2) throw InsufficientDisplacement("log has fewer than two ticks");
  const TickRecord& first = log.ticks.front();
  const TickRecord& last = log.ticks.back();
  const double d = std::hypot(last.pos[0] - first.pos[0], last.pos[1] - first.pos[1]);
  if (d < kMinCotDisplacement) {
    std::ostringstream os;
    os << "net displacement " << d << " m is below " << kMinCotDisplacement << " m";
    throw InsufficientDisplacement(os.str());
  }
  const ActuatorParams p = params_from(log.meta);
  double energy = 0.0;
  for (std::size_t k = 1; k < log.ticks.size(); ++k) {
    const double dt = log.ticks[k].t - log.ticks[k - 1].t;
    const double p0 = std::max(tick_power(log.ticks[k - 1], p), 0.0);
    const double p1 = std::max(tick_power(log.ticks[k], p), 0.0);
    energy += 0.5 * dt * (p0 + p1);
  }
  return energy / (log.meta.body_mass * kGravity * d);
}

double orientation_error(const TrialLog& log) {
  if (log.ticks.empty()) throw PreconditionError("orientation_error needs a non-empty log");
  double sum_sq = 0.0;
  for (const TickRecord& r : log.ticks) {
    const Eigen::Quaterniond q(r.quat[0], r.quat[1], r.quat[2], r.quat[3]);
    const Eigen::Matrix3d rot = q.normalized().toRotationMatrix();
    const double tilt = std::atan2(std::hypot(rot(0, 2), rot(1, 2)), rot(2, 2));
    sum_sq += tilt * tilt;
  }
  return std::sqrt(sum_sq / static_cast<double>(log.ticks.size()));
}

double mean_power(const TrialLog& log) {
  if (log.ticks.size() < 2) return 0.0;
  const double duration = log.ticks.back().t - log.ticks.front().t;
  return duration > 0.0 ? logged_energy(log) / duration : 0.0;
}

TrialMetrics trial_metrics(const TrialLog& log) {
  TrialMetrics m;
  m.mean_power_w = mean_power(log);
  try {
    m.cost_of_transport = cost_of_transport(log);
  } catch (const InsufficientDisplacement&) {
    m.cost_of_transport.reset();
  }
  m.orientation_error_rad = log.ticks.empty() ? 0.0 : orientation_error(log);
  return m;
}

TrialResult evaluate_trial(const TrialLog& log) {
  TrialResult r;
  r.seed = log.meta.seed;
  r.metrics = trial_metrics(log);
  try {
    r.score = score(log);
    r.completed = true;
  } catch (const Dnf& e) {
    r.dnf_reason = log.outcome.reason.empty() ? e.what() : log.outcome.reason;
  } catch (const NotStartedAtRest& e) {
    r.dnf_reason = e.what();
  }
  return r;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw PreconditionError("quantile of an empty sample");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Statistics aggregate(std::span<const double> scores) {
  if (scores.empty()) throw PreconditionError("aggregate needs at least one trial");
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  Statistics s;
  s.count = sorted.size();
  const double n = static_cast<double>(s.count);
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  if (s.count > 1) {
    double ss = 0.0;
    for (double x : sorted) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / (n - 1.0));
    s.std_defined = true;
  }
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  s.iqr = s.q3 - s.q1;
  return s;
}

BenchmarkResult summarize(Task task, std::vector<TrialResult> trials) {
  BenchmarkResult out;
  out.task = task;
  std::vector<double> completed;
  for (const TrialResult& t : trials) {
    if (t.completed) {
      completed.push_back(t.score);
    } else {
      ++out.dnf_count;
    }
  }
  if (!completed.empty()) out.stats = aggregate(completed);
  out.trials = std::move(trials);
  return out;
}

bool LeaderboardEntry::operator==(const LeaderboardEntry& o) const {
  auto same_stats = [](const Statistics& a, const Statistics& b) {
    return a.count == b.count && a.mean == b.mean && a.std == b.std &&
           a.std_defined == b.std_defined && a.min == b.min && a.q1 == b.q1 &&
           a.median == b.median && a.q3 == b.q3 && a.max == b.max && a.iqr == b.iqr;
  };
  return task == o.task && meta.controller == o.meta.controller &&
         meta.config_hash == o.meta.config_hash && meta.tool_version == o.meta.tool_version &&
         scores == o.scores && dnf_count == o.dnf_count && same_stats(stats, o.stats);
}

LeaderboardEntry make_leaderboard_entry(const BenchmarkResult& result,
                                        const LeaderboardMeta& meta) {
  LeaderboardEntry e;
  e.task = result.task;
  e.meta = meta;
  for (const TrialResult& t : result.trials) {
    if (t.completed) e.scores.push_back(t.score);
  }
  e.dnf_count = result.dnf_count;
  e.stats = result.stats;
  return e;
}

std::string export_leaderboard(const LeaderboardEntry& e) {
  if (e.meta.config_hash.empty()) throw ConfigError("leaderboard entry needs a config_hash");
  const Statistics& s = e.stats;
  json j{{"schema_version", 1},
         {"task", std::string(task_name(e.task))},
         {"controller", e.meta.controller},
         {"config_hash", e.meta.config_hash},
         {"tool_version", e.meta.tool_version},
         {"scores", e.scores},
         {"dnf_count", e.dnf_count},
         {"stats",
          {{"count", s.count},
           {"mean", s.mean},
           {"std", s.std},
           {"std_defined", s.std_defined},
           {"min", s.min},
           {"q1", s.q1},
           {"median", s.median},
           {"q3", s.q3},
           {"max", s.max},
           {"iqr", s.iqr}}}};
  return j.dump(2);
}

LeaderboardEntry parse_leaderboard(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("leaderboard entry is not valid JSON: ") + e.what());
  }
  auto need = [&](const json& obj, const char* key) -> const json& {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(std::string("leaderboard entry missing '") + key + "'");
    return *it;
  };
  LeaderboardEntry e;
  try {
    if (need(j, "schema_version").get<int>() != 1) {
      throw ConfigError("unsupported leaderboard schema_version");
    }
    e.task = parse_task(need(j, "task").get<std::string>());
    e.meta.controller = need(j, "controller").get<std::string>();
    e.meta.config_hash = need(j, "config_hash").get<std::string>();
    if (e.meta.config_hash.empty()) throw ConfigError("leaderboard entry has empty config_hash");
    e.meta.tool_version = need(j, "tool_version").get<std::string>();
    e.scores = need(j, "scores").get<std::vector<double>>();
    e.dnf_count = need(j, "dnf_count").get<std::size_t>();
    const json& s = need(j, "stats");
    e.stats.count = need(s, "count").get<std::size_t>();
    e.stats.mean = need(s, "mean").get<double>();
    e.stats.std = need(s, "std").get<double>();
    e.stats.std_defined = need(s, "std_defined").get<bool>();
    e.stats.min = need(s, "min").get<double>();
    e.stats.q1 = need(s, "q1").get<double>();
    e.stats.median = need(s, "median").get<double>();
    e.stats.q3 = need(s, "q3").get<double>();
    e.stats.max = need(s, "max").get<double>();
    e.stats.iqr = need(s, "iqr").get<double>();
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("leaderboard entry has a malformed field: ") + ex.what());
  }
  return e;
}

void sort_leaderboard(std::vector<LeaderboardEntry>& entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const LeaderboardEntry& a, const LeaderboardEntry& b) {
                     if (a.task != b.task) return a.task < b.task;
                     const bool a_ok = a.stats.count > 0;
                     const bool b_ok = b.stats.count > 0;
                     if (a_ok != b_ok) return a_ok;
                     return better_score(a.task, a.stats.mean, b.stats.mean);
                   });
}

std::string summary_csv(const BenchmarkResult& result, const LeaderboardMeta& meta) {
  std::ostringstream os;
  os.precision(17);
  os << "# quadbench " << meta.tool_version << " config_hash=" << meta.config_hash
     << " task=" << task_name(result.task) << '\n';
  os << "trial,seed,completed,score,mean_power_w,cost_of_transport,orientation_error_rad,"
        "dnf_reason\n";
  for (std::size_t k = 0; k < result.trials.size(); ++k) {
    const TrialResult& t = result.trials[k];
    os << k << ',' << t.seed << ',' << (t.completed ? 1 : 0) << ',';
    if (t.completed) os << t.score;
    os << ',' << t.metrics.mean_power_w << ',';
    if (t.metrics.cost_of_transport) os << *t.metrics.cost_of_transport;
    os << ',' << t.metrics.orientation_error_rad << ',';
    std::string reason = t.dnf_reason;
    std::replace(reason.begin(), reason.end(), ',', ';');
    std::replace(reason.begin(), reason.end(), '\n', ' ');
    os << reason << '\n';
  }
  return os.str();
}

}  // namespace quadbench
