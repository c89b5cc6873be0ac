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

#ifndef QUADBENCH_TERRAIN_HPP_
#define QUADBENCH_TERRAIN_HPP_

#include <vector>

#include "quadbench/kinematics.hpp"

namespace quadbench {

// Axis-aligned box resting on the ground plane. Bounds are closed.
struct Obstacle {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  double height = 0.0;

  bool covers(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
};

struct Terrain {
  double ground_height = 0.0;
  std::vector<Obstacle> obstacles;
  double mu = 0.7;
  double stiffness = 5000.0;           // N/m
  double damping = 50.0;               // Ns/m, normal, approach only
  double tangential_damping = 100.0;   // Ns/m, viscous slip resistance

  void validate() const;
};

// Max of the plane and every obstacle whose footprint covers (x, y).
double terrain_height(double x, double y, const Terrain& terrain);

struct ContactResult {
  Vec3 force = Vec3::Zero();   // on the foot, world frame
  Vec3 normal = Vec3::UnitZ();
  double penetration = 0.0;    // >= 0
  double normal_force = 0.0;   // >= 0
  double tangential_force = 0.0;
  double dissipation = 0.0;    // W, >= 0
  bool active = false;
};

// Penalty contact of a point foot. Inside an obstacle the nearest face
// defines the normal, so feet hitting a box side are pushed out sideways.
ContactResult contact(const Vec3& foot_pos, const Vec3& foot_vel, const Terrain& terrain);

inline Vec3 contact_force(const Vec3& foot_pos, const Vec3& foot_vel, const Terrain& terrain) {
  return contact(foot_pos, foot_vel, terrain).force;
}

// Flat ground only.
Terrain flat_terrain();

// Two full-width boxes across the course.
Terrain scramble_terrain(double height = 0.10, double first_x = 1.5, double second_x = 3.0,
                         double depth = 0.3, double half_width = 2.0);

}  // namespace quadbench

#endif  // QUADBENCH_TERRAIN_HPP_
