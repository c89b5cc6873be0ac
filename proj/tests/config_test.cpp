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

#include "quadbench/config.hpp"

#include <gtest/gtest.h>

#include "quadbench/errors.hpp"

namespace quadbench {
namespace {

TEST(Config, EmptyDocumentGivesDefaults) {
  const RunConfig c = parse_config("{}");
  EXPECT_EQ(canonical_form(c), canonical_form(RunConfig{}));
  EXPECT_EQ(c.gait.frequency, GaitParams{}.frequency);
}

TEST(Config, PartialSectionsOverrideDefaults) {
  const RunConfig c = parse_config(R"({"gait": {"frequency": 3.0}, "run": {"trials": 2}})");
  EXPECT_EQ(c.gait.frequency, 3.0);
  EXPECT_EQ(c.gait.step_height, GaitParams{}.step_height);
  EXPECT_EQ(c.run.trials, 2);
}

TEST(Config, UnknownKeyIsNamed) {
  try {
    parse_config(R"({"gait": {"frequncy": 3.0}})");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("gait.frequncy"), std::string::npos) << e.what();
  }
}

TEST(Config, WrongTypeIsNamed) {
  try {
    parse_config(R"({"actuator": {"k_t": "strong"}})");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("actuator.k_t"), std::string::npos) << e.what();
  }
}

TEST(Config, InvalidValueIsNamed) {
  try {
    parse_config(R"({"gait": {"stance_fraction": 1.5}})");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("stance_fraction"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_config("{not json"), ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 9})"), ConfigError);
}

TEST(Config, RoundTripThroughJson) {
  RunConfig c;
  c.gait.frequency = 3.25;
  c.contact.mu = 0.55;
  c.scramble.obstacles[1].height = 0.07;
  c.run.seed = 99;
  const RunConfig back = parse_config(to_json(c));
  EXPECT_EQ(canonical_form(back), canonical_form(c));
  EXPECT_EQ(config_hash(back), config_hash(c));
}

TEST(Config, HashIsStableAndSensitive) {
  const RunConfig a;
  RunConfig b;
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  b.actuator.winding_resistance = 0.11;
  EXPECT_NE(config_hash(a), config_hash(b));
  // Formatting and key order do not matter.
  const RunConfig c = parse_config(R"({"run":{"seed":1},   "gait":{"step_height":0.04}})");
  EXPECT_EQ(config_hash(c), config_hash(a));
}

TEST(Config, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}

TEST(Config, GaitFragmentMergesBack) {
  GaitParams g;
  g.frequency = 3.5;
  g.stance_fraction = 0.65;
  const RunConfig c = parse_config(gait_fragment(g));
  EXPECT_EQ(c.gait.frequency, 3.5);
  EXPECT_EQ(c.gait.stance_fraction, 0.65);
}

TEST(Config, TaskTerrain) {
  const RunConfig c;
  EXPECT_TRUE(task_terrain(c, Task::Sprint).obstacles.empty());
  ASSERT_EQ(task_terrain(c, Task::Scramble).obstacles.size(), 2u);
  EXPECT_EQ(task_terrain(c, Task::Scramble).obstacles[0].height, 0.10);
  EXPECT_EQ(task_duration(c, Task::Scramble), 60.0);
}

TEST(Config, MissingFileIsConfigError) {
  EXPECT_THROW(load_config("/nonexistent/quadbench.json"), ConfigError);
}

}  // namespace
}  // namespace quadbench
