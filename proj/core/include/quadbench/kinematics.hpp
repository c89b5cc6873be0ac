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

// Leg kinematics for a quadruped with four identical 3-DOF legs.
//
// Frames: body frame is x forward, y left, z up, origin at the geometric
// centre of the four hips. Each leg has an abduction (roll) joint about the
// body x axis followed by hip and knee pitch joints about the rotated y axis.
//
// Joint conventions (all angles in radians):
//   * q = (0, 0, 0) points the leg straight down.
//   * hip pitch is positive when the thigh swings forward (+x).
//   * knee is the interior bend between thigh and shank, in [0, pi]; positive
//     bend puts the knee behind the hip-foot line ("knee backward").
//   * abduction is a right-hand rotation about +x; positive abduction swings
//     a hanging foot toward +y.

#ifndef QUADBENCH_KINEMATICS_HPP_
#define QUADBENCH_KINEMATICS_HPP_

#include <array>
#include <cstddef>
#include <string_view>

#include <Eigen/Core>

namespace quadbench {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Joint vector of one leg, ordered (abduction, hip, knee).
using LegJoints = Eigen::Vector3d;

inline constexpr std::size_t kNumLegs = 4;
inline constexpr std::size_t kNumJoints = 12;
inline constexpr double kGravity = 9.81;

enum class Leg : int { FR = 0, FL = 1, BR = 2, BL = 3 };

inline constexpr std::array<Leg, kNumLegs> kAllLegs = {Leg::FR, Leg::FL, Leg::BR, Leg::BL};

constexpr std::size_t index(Leg leg) { return static_cast<std::size_t>(leg); }
constexpr bool is_left(Leg leg) { return leg == Leg::FL || leg == Leg::BL; }
constexpr bool is_front(Leg leg) { return leg == Leg::FR || leg == Leg::FL; }
std::string_view leg_name(Leg leg);

// Hip placements, link lengths and lumped mass. Defaults are desk-scale
// placeholders; nothing in the library assumes these particular numbers.
struct RobotGeometry {
  double body_length = 0.276;  // fore-aft hip separation
  double body_width = 0.10;    // lateral hip separation
  double hip_offset = 0.04;    // abduction axis to leg plane
  double l_upper = 0.08;
  double l_lower = 0.11;
  double body_mass = 2.1;
  double body_height = 0.05;  // only used for the base inertia box

  // Throws ConfigError if a length or the mass is not strictly positive.
  void validate() const;

  Vec3 hip_origin(Leg leg) const;
  // Signed lateral offset of the leg plane from the hip (+ for left legs).
  double lateral_offset(Leg leg) const;
  // Largest hip-to-foot distance the leg can reach.
  double max_reach() const;
  // Diagonal inertia of a solid box of the body dimensions and mass.
  Vec3 base_inertia() const;
};

Vec3 forward_kinematics(Leg leg, const LegJoints& q, const RobotGeometry& geom);

// d(foot position)/d(q), analytic.
Mat3 leg_jacobian(Leg leg, const LegJoints& q, const RobotGeometry& geom);

// Analytic IK on the knee-backward branch. Throws Unreachable when the target
// lies outside the reachable annulus of the leg.
LegJoints inverse_kinematics(Leg leg, const Vec3& target, const RobotGeometry& geom);

// True when inverse_kinematics(target) would succeed.
bool is_reachable(Leg leg, const Vec3& target, const RobotGeometry& geom);

Vec3 foot_velocity(Leg leg, const LegJoints& q, const LegJoints& qd,
                   const RobotGeometry& geom);

}  // namespace quadbench

#endif  // QUADBENCH_KINEMATICS_HPP_
