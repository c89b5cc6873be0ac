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

#include "quadbench/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quadbench/errors.hpp"

namespace quadbench {

void Terrain::validate() const {
  if (!(mu >= 0.0)) throw ConfigError("terrain.mu must be >= 0");
  if (!(stiffness > 0.0)) throw ConfigError("terrain.stiffness must be > 0");
  if (!(damping >= 0.0)) throw ConfigError("terrain.damping must be >= 0");
  if (!(tangential_damping >= 0.0)) throw ConfigError("terrain.tangential_damping must be >= 0");
  if (!(ground_height >= 0.0)) throw ConfigError("terrain.ground_height must be >= 0");
  for (const Obstacle& o : obstacles) {
    if (!(o.height >= 0.0)) throw ConfigError("terrain.obstacles[].height must be >= 0");
    if (!(o.x_min <= o.x_max && o.y_min <= o.y_max)) {
      throw ConfigError("terrain.obstacles[] bounds must satisfy min <= max");
    }
  }
}

double terrain_height(double x, double y, const Terrain& terrain) {
  double h = terrain.ground_height;
  for (const Obstacle& o : terrain.obstacles) {
    if (o.covers(x, y)) h = std::max(h, o.height);
  }
  return h;
}

namespace {

struct Penetration {
  double depth = 0.0;
  Vec3 normal = Vec3::UnitZ();
};

// Shallowest exit through the top or a side face.
Penetration box_penetration(const Obstacle& o, const Vec3& p) {
  Penetration best{o.height - p.z(), Vec3::UnitZ()};
  auto consider = [&](double depth, const Vec3& n) {
    if (depth < best.depth) best = {depth, n};
  };
  consider(p.x() - o.x_min, -Vec3::UnitX());
  consider(o.x_max - p.x(), Vec3::UnitX());
  consider(p.y() - o.y_min, -Vec3::UnitY());
  consider(o.y_max - p.y(), Vec3::UnitY());
  return best;
}

}  // namespace

ContactResult contact(const Vec3& foot_pos, const Vec3& foot_vel, const Terrain& terrain) {
  ContactResult out;

  Penetration pen;
  bool touching = false;
  if (foot_pos.z() < terrain.ground_height) {
    pen = {terrain.ground_height - foot_pos.z(), Vec3::UnitZ()};
    touching = true;
  }
  for (const Obstacle& o : terrain.obstacles) {
    if (!o.covers(foot_pos.x(), foot_pos.y()) || foot_pos.z() >= o.height) continue;
    const Penetration box = box_penetration(o, foot_pos);
    // Overlapping boxes: keep the one the foot is most embedded in.
    if (!touching || box.depth > pen.depth) {
      pen = box;
      touching = true;
    }
  }
  if (!touching || pen.depth <= 0.0) return out;

  const double v_n = foot_vel.dot(pen.normal);
  const double approach = std::max(0.0, -v_n);
  const double f_n = std::max(0.0, terrain.stiffness * pen.depth + terrain.damping * approach);

  const Vec3 v_t = foot_vel - v_n * pen.normal;
  Vec3 f_t = -terrain.tangential_damping * v_t;
  const double cap = terrain.mu * f_n;
  const double f_t_norm = f_t.norm();
  if (f_t_norm > cap) f_t *= cap / f_t_norm;

  out.active = true;
  out.normal = pen.normal;
  out.penetration = pen.depth;
  out.normal_force = f_n;
  out.tangential_force = f_t.norm();
  out.force = f_n * pen.normal + f_t;
  out.dissipation = terrain.damping * approach * approach - f_t.dot(v_t);
  return out;
}

Terrain flat_terrain() { return Terrain{}; }

Terrain scramble_terrain(double height, double first_x, double second_x, double depth,
                         double half_width) {
  Terrain t;
  t.obstacles.push_back({first_x, first_x + depth, -half_width, half_width, height});
  t.obstacles.push_back({second_x, second_x + depth, -half_width, half_width, height});
  return t;
}

}  // namespace quadbench
