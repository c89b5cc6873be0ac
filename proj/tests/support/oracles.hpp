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

// Reference implementations used as test oracles. These are written from the
// documented conventions, independently of the library code they check.

#ifndef QUADBENCH_TESTS_SUPPORT_ORACLES_HPP_
#define QUADBENCH_TESTS_SUPPORT_ORACLES_HPP_

#include <Eigen/Geometry>
#include <cmath>
#include <functional>
#include <random>

#include "quadbench/kinematics.hpp"

namespace quadbench::testing {

// Foot position by chaining homogeneous transforms:
//   hip -> Rx(ab) -> lateral offset -> pitch(hip) -> thigh -> pitch(knee) -> shank.
// Positive hip/knee pitch swings the distal link toward +x, which is a
// rotation about -y.
inline Vec3 transform_chain_fk(Leg leg, const LegJoints& q, const RobotGeometry& g) {
  using Eigen::AngleAxisd;
  using Eigen::Translation3d;
  const Eigen::Affine3d t = Translation3d(g.hip_origin(leg)) * AngleAxisd(q[0], Vec3::UnitX()) *
                            Translation3d(0.0, g.lateral_offset(leg), 0.0) *
                            AngleAxisd(-q[1], Vec3::UnitY()) * Translation3d(0.0, 0.0, -g.l_upper) *
                            AngleAxisd(-q[2], Vec3::UnitY()) * Translation3d(0.0, 0.0, -g.l_lower);
  return t * Vec3::Zero();
}

// Central differences of a vector function of a 3-vector.
inline Mat3 finite_difference_jacobian(const std::function<Vec3(const Vec3&)>& f, const Vec3& x,
                                       double h = 1e-6) {
  Mat3 j;
  for (int c = 0; c < 3; ++c) {
    Vec3 xp = x;
    Vec3 xm = x;
    xp[c] += h;
    xm[c] -= h;
    j.col(c) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return j;
}

// Random joint configuration on the IK branch: knee strictly inside (0, pi)
// and the foot below the hip in the leg plane.
inline LegJoints random_joints(std::mt19937_64& rng, const RobotGeometry& g) {
  std::uniform_real_distribution<double> ab(-0.6, 0.6);
  std::uniform_real_distribution<double> hip(-1.2, 1.2);
  std::uniform_real_distribution<double> knee(0.15, 2.9);
  for (;;) {
    const LegJoints q{ab(rng), hip(rng), knee(rng)};
    const double planar_z = -g.l_upper * std::cos(q[1]) - g.l_lower * std::cos(q[1] + q[2]);
    if (planar_z < -0.02) return q;
  }
}

}  // namespace quadbench::testing

#endif  // QUADBENCH_TESTS_SUPPORT_ORACLES_HPP_
