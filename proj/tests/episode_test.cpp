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

#include "quadbench/episode.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "quadbench/config.hpp"
#include "quadbench/errors.hpp"

namespace quadbench {
namespace {

HighLevelController wrap(const ReferenceTrotController& ctl) {
  return [&ctl](const Observation& o) { return ctl(o); };
}

ReferenceTrotController::Profile still() {
  ReferenceTrotController::Profile p;
  p.target_speed = 0.0;
  p.heading_gain = 0.0;
  return p;
}

TEST(Episode, IdenticalSeedsGiveIdenticalLogs) {
  const RunConfig config;
  const EpisodeSetup setup = make_episode_setup(config, Task::Sprint);
  const ReferenceTrotController ctl = make_reference_controller(config, Task::Sprint);
  const TrialLog a = run_episode(setup, wrap(ctl), 1.5, 42);
  const TrialLog b = run_episode(setup, wrap(ctl), 1.5, 42);
  EXPECT_TRUE(a == b);
  const TrialLog c = run_episode(setup, wrap(ctl), 1.5, 43);
  EXPECT_FALSE(a.ticks == c.ticks);  // stiction draws differ
}

TEST(Episode, LogsEveryTick) {
  const RunConfig config;
  const EpisodeSetup setup = make_episode_setup(config, Task::Sprint);
  const ReferenceTrotController ctl(config.gait, config.geometry, still());
  const TrialLog log = run_episode(setup, wrap(ctl), 0.25, 1);
  ASSERT_EQ(log.ticks.size(), 251u);
  for (std::size_t k = 0; k < log.ticks.size(); ++k) {
    EXPECT_NEAR(log.ticks[k].t, 0.001 * static_cast<double>(k), 1e-9);
  }
}

TEST(Episode, HighLevelRunsAtHundredHertz) {
  const RunConfig config;
  const EpisodeSetup setup = make_episode_setup(config, Task::Sprint);
  const ReferenceTrotController ctl(config.gait, config.geometry, still());
  int calls = 0;
  double last = -1.0;
  double min_gap = 1.0;
  run_episode(
      setup,
      [&](const Observation& o) {
        ++calls;
        if (last >= 0.0) min_gap = std::min(min_gap, o.t - last);
        last = o.t;
        return ctl(o);
      },
      1.0, 1);
  EXPECT_EQ(calls, 100);
  EXPECT_NEAR(min_gap, 0.01, 1e-9);
}

TEST(Episode, ZeroVelocityStandStaysPut) {
  RunConfig config;
  config.gait.step_height = 0.0;
  const EpisodeSetup setup = make_episode_setup(config, Task::Sprint);
  const ReferenceTrotController ctl(config.gait, config.geometry, still());
  const TrialLog log = run_episode(setup, wrap(ctl), 10.0, 1);
  ASSERT_EQ(log.ticks.size(), 10001u) << log.outcome.reason;
  const TickRecord& a = log.ticks.front();
  const TickRecord& b = log.ticks.back();
  EXPECT_LT(std::hypot(b.pos[0] - a.pos[0], b.pos[1] - a.pos[1]), 0.02);
}

TEST(Episode, TrotMovesForward) {
  const RunConfig config;
  const EpisodeSetup setup = make_episode_setup(config, Task::Sprint);
  ReferenceTrotController::Profile profile;
  profile.target_speed = 0.5;
  const ReferenceTrotController ctl(config.gait, config.geometry, profile);
  const TrialLog log = run_episode(setup, wrap(ctl), 5.0, 2);
  ASSERT_EQ(log.ticks.size(), 5001u) << log.outcome.reason;
  double vx = 0.0;
  std::size_t n = 0;
  double max_qd = 0.0;
  for (std::size_t k = 0; k < log.ticks.size(); ++k) {
    const TickRecord& r = log.ticks[k];
    if (r.t >= 3.0) {
      vx += r.vel[0];
      ++n;
    }
    for (double qd : r.qd) max_qd = std::max(max_qd, std::abs(qd));
    const double norm = std::sqrt(r.quat[0] * r.quat[0] + r.quat[1] * r.quat[1] +
                                  r.quat[2] * r.quat[2] + r.quat[3] * r.quat[3]);
    ASSERT_NEAR(norm, 1.0, 1e-9);
  }
  EXPECT_GT(vx / static_cast<double>(n), 0.0);
  EXPECT_LE(max_qd, 60.0);
}

TEST(Episode, FastTrotNeedsTenRadiansPerSecond) {
  const RunConfig config;
  const EpisodeSetup setup = make_episode_setup(config, Task::Sprint);
  ReferenceTrotController::Profile profile;
  profile.target_speed = 0.7;
  const ReferenceTrotController ctl(config.gait, config.geometry, profile);
  const TrialLog log = run_episode(setup, wrap(ctl), 4.0, 3);
  double max_qd = 0.0;
  for (const TickRecord& r : log.ticks) {
    for (double qd : r.qd) max_qd = std::max(max_qd, std::abs(qd));
  }
  EXPECT_GE(max_qd, 10.0);
}

TEST(Episode, ControllerExceptionIsDnf) {
  const RunConfig config;
  const EpisodeSetup setup = make_episode_setup(config, Task::Sprint);
  const TrialLog log = run_episode(
      setup,
      [](const Observation& o) -> HighLevelCommand {
        if (o.t > 0.505) throw std::runtime_error("planner gave up");
        HighLevelCommand c;
        c.mode = ControlMode::TorquePassthrough;
        c.legs.fill(TorqueCommand{});
        return c;
      },
      2.0, 1);
  EXPECT_FALSE(log.outcome.completed);
  EXPECT_NE(log.outcome.reason.find("planner gave up"), std::string::npos);
  EXPECT_NEAR(log.outcome.t_finish, 0.51, 1e-9);
}

TEST(Episode, ModeMismatchIsDnf) {
  const RunConfig config;
  const EpisodeSetup setup = make_episode_setup(config, Task::Sprint);
  const TrialLog log = run_episode(
      setup,
      [](const Observation&) {
        HighLevelCommand c;
        c.mode = ControlMode::JointPD;
        c.legs.fill(TorqueCommand{});
        return c;
      },
      1.0, 1);
  EXPECT_FALSE(log.outcome.completed);
  EXPECT_EQ(log.ticks.size(), 1u);
}

TEST(Episode, FlippedRobotGivesUp) {
  const RunConfig config;
  EpisodeSetup setup = make_episode_setup(config, Task::Sprint);
  setup.initial.orientation = Quat(Eigen::AngleAxisd(1.3, Vec3::UnitX()));
  setup.initial.position.z() = 1.0;
  const ReferenceTrotController ctl = make_reference_controller(config, Task::Sprint);
  const TrialLog log = run_episode(setup, wrap(ctl), 1.0, 1);
  EXPECT_FALSE(log.outcome.completed);
  EXPECT_NE(log.outcome.reason.find("fell"), std::string::npos) << log.outcome.reason;
}

TEST(Episode, FinishPredicateEndsEpisode) {
  const RunConfig config;
  const EpisodeSetup setup = make_episode_setup(config, Task::Sprint);
  const ReferenceTrotController ctl(config.gait, config.geometry, still());
  const TrialLog log =
      run_episode(setup, wrap(ctl), 2.0, 1, [](const SimState& s) { return s.t >= 0.3; });
  EXPECT_TRUE(log.outcome.completed);
  EXPECT_NEAR(log.outcome.t_finish, 0.3, 1e-9);
}

TEST(Episode, RejectsNonPositiveDuration) {
  const RunConfig config;
  const EpisodeSetup setup = make_episode_setup(config, Task::Sprint);
  const ReferenceTrotController ctl(config.gait, config.geometry, still());
  EXPECT_THROW(run_episode(setup, wrap(ctl), 0.0, 1), PreconditionError);
}

}  // namespace
}  // namespace quadbench
