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

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "quadbench/errors.hpp"

#ifndef QUADBENCH_VERSION
#define QUADBENCH_VERSION "0.0.0"
#endif

namespace quadbench {

using nlohmann::json;

std::string_view tool_version() { return QUADBENCH_VERSION; }

namespace {

// Reads known keys of one JSON object and rejects the rest.
class SectionReader {
 public:
  SectionReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError("config key '" + path_ + "' must be an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    known_.emplace_back(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      it->get_to(out);
    } catch (const json::exception&) {
      throw ConfigError("config key '" + qualified(key) + "' has the wrong type");
    }
  }

  void get(const char* key, Vec3& out) {
    std::array<double, 3> a{out.x(), out.y(), out.z()};
    get(key, a);
    out = Vec3{a[0], a[1], a[2]};
  }

  const json* child(const char* key) {
    known_.emplace_back(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::string qualified(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void finish() const {
    for (const auto& item : obj_.items()) {
      if (std::find(known_.begin(), known_.end(), item.key()) == known_.end()) {
        throw ConfigError("unknown config key '" + qualified(item.key()) + "'");
      }
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::vector<std::string> known_;
};

json vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json obstacle_json(const Obstacle& o) {
  return {{"x_min", o.x_min}, {"x_max", o.x_max}, {"y_min", o.y_min},
          {"y_max", o.y_max}, {"height", o.height}};
}

std::vector<Obstacle> read_obstacles(const json& arr, const std::string& path) {
  if (!arr.is_array()) throw ConfigError("config key '" + path + "' must be an array");
  std::vector<Obstacle> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    SectionReader r(arr[k], path + "[" + std::to_string(k) + "]");
    Obstacle o;
    r.get("x_min", o.x_min);
    r.get("x_max", o.x_max);
    r.get("y_min", o.y_min);
    r.get("y_max", o.y_max);
    r.get("height", o.height);
    r.finish();
    out.push_back(o);
  }
  return out;
}

json gait_json(const GaitParams& g) {
  return {{"frequency", g.frequency},       {"step_height", g.step_height},
          {"stance_fraction", g.stance_fraction}, {"phase_offsets", g.phase_offsets},
          {"stand_height", g.stand_height}, {"stance_depth", g.stance_depth}};
}

void read_gait(const json& j, GaitParams& g) {
  SectionReader r(j, "gait");
  r.get("frequency", g.frequency);
  r.get("step_height", g.step_height);
  r.get("stance_fraction", g.stance_fraction);
  r.get("phase_offsets", g.phase_offsets);
  r.get("stand_height", g.stand_height);
  r.get("stance_depth", g.stance_depth);
  r.finish();
}

json config_json(const RunConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  const RobotGeometry& g = c.geometry;
  j["geometry"] = {{"body_length", g.body_length}, {"body_width", g.body_width},
                   {"hip_offset", g.hip_offset},   {"l_upper", g.l_upper},
                   {"l_lower", g.l_lower},         {"body_mass", g.body_mass},
                   {"body_height", g.body_height}};
  const ActuatorParams& a = c.actuator;
  j["actuator"] = {{"k_t", a.k_t},
                   {"gear_ratio", a.gear_ratio},
                   {"coulomb", a.coulomb},
                   {"damping", a.damping},
                   {"load_friction", a.load_friction},
                   {"output_inertia", a.output_inertia},
                   {"max_speed", a.max_speed},
                   {"bandwidth_hz", a.bandwidth_hz},
                   {"i_max", a.i_max},
                   {"i_continuous", a.i_continuous},
                   {"winding_resistance", a.winding_resistance}};
  j["gains"] = {{"kp_task", vec(c.gains.kp_task)},
                {"kd_task", vec(c.gains.kd_task)},
                {"kp_joint", c.gains.kp_joint},
                {"kd_joint", c.gains.kd_joint}};
  j["gait"] = gait_json(c.gait);
  j["contact"] = {{"ground_height", c.contact.ground_height},
                  {"mu", c.contact.mu},
                  {"stiffness", c.contact.stiffness},
                  {"damping", c.contact.damping},
                  {"tangential_damping", c.contact.tangential_damping}};
  const SimParams& s = c.sim;
  j["sim"] = {{"dt", s.dt},
              {"high_level_hz", s.high_level_hz},
              {"stiction", s.stiction},
              {"stiction_fraction", s.stiction_fraction},
              {"stiction_speed", s.stiction_speed},
              {"imu_accel_noise", s.imu_accel_noise},
              {"imu_gyro_noise", s.imu_gyro_noise},
              {"filter_gain", s.filter_gain}};
  j["sprint"] = {{"course_length", c.sprint.course_length},
                 {"target_speed", c.sprint.target_speed},
                 {"ramp_time", c.sprint.ramp_time},
                 {"duration", c.sprint.duration},
                 {"heading_gain", c.sprint.heading_gain}};
  json obstacles = json::array();
  for (const Obstacle& o : c.scramble.obstacles) obstacles.push_back(obstacle_json(o));
  j["scramble"] = {{"obstacles", obstacles},
                   {"finish_x", c.scramble.finish_x},
                   {"target_speed", c.scramble.target_speed},
                   {"ramp_time", c.scramble.ramp_time},
                   {"duration", c.scramble.duration},
                   {"heading_gain", c.scramble.heading_gain}};
  j["run"] = {{"seed", c.run.seed},
              {"trials", c.run.trials},
              {"output_dir", c.run.output_dir},
              {"controller", c.run.controller}};
  return j;
}

}  // namespace

void RunConfig::validate() const {
  if (schema_version != kConfigSchemaVersion) {
    throw ConfigError("config key 'schema_version' must be " +
                      std::to_string(kConfigSchemaVersion));
  }
  geometry.validate();
  actuator.validate();
  gains.validate();
  gait.validate(geometry);
  contact.validate();
  sim.validate();
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0)) throw ConfigError(std::string("config key '") + key + "' must be > 0");
  };
  positive(sprint.course_length, "sprint.course_length");
  positive(sprint.duration, "sprint.duration");
  positive(scramble.duration, "scramble.duration");
  positive(scramble.finish_x, "scramble.finish_x");
  if (sprint.ramp_time < 0.0) throw ConfigError("config key 'sprint.ramp_time' must be >= 0");
  if (scramble.ramp_time < 0.0) throw ConfigError("config key 'scramble.ramp_time' must be >= 0");
  if (run.trials < 1) throw ConfigError("config key 'run.trials' must be >= 1");
  Terrain t = contact;
  t.obstacles = scramble.obstacles;
  t.validate();
}

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig c;
  SectionReader top(root, "");
  top.get("schema_version", c.schema_version);

  if (const json* j = top.child("geometry")) {
    SectionReader r(*j, "geometry");
    RobotGeometry& g = c.geometry;
    r.get("body_length", g.body_length);
    r.get("body_width", g.body_width);
    r.get("hip_offset", g.hip_offset);
    r.get("l_upper", g.l_upper);
    r.get("l_lower", g.l_lower);
    r.get("body_mass", g.body_mass);
    r.get("body_height", g.body_height);
    r.finish();
  }
  if (const json* j = top.child("actuator")) {
    SectionReader r(*j, "actuator");
    ActuatorParams& a = c.actuator;
    r.get("k_t", a.k_t);
    r.get("gear_ratio", a.gear_ratio);
    r.get("coulomb", a.coulomb);
    r.get("damping", a.damping);
    r.get("load_friction", a.load_friction);
    r.get("output_inertia", a.output_inertia);
    r.get("max_speed", a.max_speed);
    r.get("bandwidth_hz", a.bandwidth_hz);
    r.get("i_max", a.i_max);
    r.get("i_continuous", a.i_continuous);
    r.get("winding_resistance", a.winding_resistance);
    r.finish();
  }
  if (const json* j = top.child("gains")) {
    SectionReader r(*j, "gains");
    r.get("kp_task", c.gains.kp_task);
    r.get("kd_task", c.gains.kd_task);
    r.get("kp_joint", c.gains.kp_joint);
    r.get("kd_joint", c.gains.kd_joint);
    r.finish();
  }
  if (const json* j = top.child("gait")) read_gait(*j, c.gait);
  if (const json* j = top.child("contact")) {
    SectionReader r(*j, "contact");
    r.get("ground_height", c.contact.ground_height);
    r.get("mu", c.contact.mu);
    r.get("stiffness", c.contact.stiffness);
    r.get("damping", c.contact.damping);
    r.get("tangential_damping", c.contact.tangential_damping);
    r.finish();
  }
  if (const json* j = top.child("sim")) {
    SectionReader r(*j, "sim");
    SimParams& s = c.sim;
    r.get("dt", s.dt);
    r.get("high_level_hz", s.high_level_hz);
    r.get("stiction", s.stiction);
    r.get("stiction_fraction", s.stiction_fraction);
    r.get("stiction_speed", s.stiction_speed);
    r.get("imu_accel_noise", s.imu_accel_noise);
    r.get("imu_gyro_noise", s.imu_gyro_noise);
    r.get("filter_gain", s.filter_gain);
    r.finish();
  }
  if (const json* j = top.child("sprint")) {
    SectionReader r(*j, "sprint");
    r.get("course_length", c.sprint.course_length);
    r.get("target_speed", c.sprint.target_speed);
    r.get("ramp_time", c.sprint.ramp_time);
    r.get("duration", c.sprint.duration);
    r.get("heading_gain", c.sprint.heading_gain);
    r.finish();
  }
  if (const json* j = top.child("scramble")) {
    SectionReader r(*j, "scramble");
    if (const json* obs = r.child("obstacles")) {
      c.scramble.obstacles = read_obstacles(*obs, "scramble.obstacles");
    }
    r.get("finish_x", c.scramble.finish_x);
    r.get("target_speed", c.scramble.target_speed);
    r.get("ramp_time", c.scramble.ramp_time);
    r.get("duration", c.scramble.duration);
    r.get("heading_gain", c.scramble.heading_gain);
    r.finish();
  }
  if (const json* j = top.child("run")) {
    SectionReader r(*j, "run");
    r.get("seed", c.run.seed);
    r.get("trials", c.run.trials);
    r.get("output_dir", c.run.output_dir);
    r.get("controller", c.run.controller);
    r.finish();
  }
  top.finish();
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

std::string to_json(const RunConfig& config, int indent) { return config_json(config).dump(indent); }

std::string canonical_form(const RunConfig& config) { return config_json(config).dump(); }

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const RunConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_form(config))));
  return buf;
}

std::string gait_fragment(const GaitParams& gait) {
  return json{{"gait", gait_json(gait)}}.dump(2);
}

Terrain task_terrain(const RunConfig& config, Task task) {
  Terrain t = config.contact;
  t.obstacles.clear();
  if (task == Task::Scramble) t.obstacles = config.scramble.obstacles;
  return t;
}

EpisodeSetup make_episode_setup(const RunConfig& config, Task task) {
  EpisodeSetup s;
  s.geometry = config.geometry;
  s.actuator = config.actuator;
  s.gains = config.gains;
  s.terrain = task_terrain(config, task);
  s.sim = config.sim;
  Simulator sim(s.geometry, s.actuator, s.terrain, s.sim, 0);
  s.initial = sim.standing_state(config.gait.stand_height);
  s.meta.task = task;
  s.meta.config_hash = config_hash(config);
  s.meta.tool_version = std::string(tool_version());
  s.meta.controller = config.run.controller;
  s.meta.course_length = config.sprint.course_length;
  s.meta.finish_x = config.scramble.finish_x;
  return s;
}

ReferenceTrotController make_reference_controller(const RunConfig& config, Task task) {
  ReferenceTrotController::Profile p;
  if (task == Task::Scramble) {
    p.target_speed = config.scramble.target_speed;
    p.ramp_time = config.scramble.ramp_time;
    p.heading_gain = config.scramble.heading_gain;
  } else {
    p.target_speed = config.sprint.target_speed;
    p.ramp_time = config.sprint.ramp_time;
    p.heading_gain = config.sprint.heading_gain;
  }
  return ReferenceTrotController(config.gait, config.geometry, p);
}

FinishPredicate make_finish_predicate(const RunConfig& config, Task task) {
  if (task == Task::Scramble) {
    const double finish_x = config.scramble.finish_x;
    return [finish_x](const SimState& s) { return s.position.x() >= finish_x; };
  }
  const double length = config.sprint.course_length;
  return [length](const SimState& s) { return s.position.x() >= length; };
}

double task_duration(const RunConfig& config, Task task) {
  return task == Task::Scramble ? config.scramble.duration : config.sprint.duration;
}

TrialLog run_trial(const RunConfig& config, Task task, std::uint64_t seed) {
  const EpisodeSetup setup = make_episode_setup(config, task);
  const ReferenceTrotController controller = make_reference_controller(config, task);
  return run_episode(setup, controller, task_duration(config, task), seed,
                     make_finish_predicate(config, task));
}

}  // namespace quadbench
