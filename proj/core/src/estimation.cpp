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

// IMU model and attitude filter.

#include <cmath>

#include "quadbench/sim.hpp"

namespace quadbench {

ImuSample imu_read(const SimState& state, const SimParams& params, std::mt19937_64* rng) {
  ImuSample s;
  const Vec3 gravity{0.0, 0.0, -kGravity};
  s.angular_rate = state.angular_velocity;
  s.specific_force = state.orientation.conjugate() * (state.linear_acceleration - gravity);
  if (rng != nullptr) {
    if (params.imu_gyro_noise > 0.0) {
      std::normal_distribution<double> n(0.0, params.imu_gyro_noise);
      for (int k = 0; k < 3; ++k) s.angular_rate[k] += n(*rng);
    }
    if (params.imu_accel_noise > 0.0) {
      std::normal_distribution<double> n(0.0, params.imu_accel_noise);
      for (int k = 0; k < 3; ++k) s.specific_force[k] += n(*rng);
    }
  }
  return s;
}

Quat estimate_orientation(const Quat& prev, const ImuSample& imu, double dt, double gain) {
  Vec3 rate = imu.angular_rate;
  const double f = imu.specific_force.norm();
  // No gravity reference in free fall.
  if (gain > 0.0 && f > 1e-6) {
    const Vec3 measured_up = imu.specific_force / f;
    const Vec3 estimated_up = prev.conjugate() * Vec3::UnitZ();
    rate += gain * measured_up.cross(estimated_up);
  }
  const Vec3 dtheta = dt * rate;
  const double angle = dtheta.norm();
  Quat next = prev;
  if (angle > 0.0) next = prev * Quat(Eigen::AngleAxisd(angle, dtheta / angle));
  next.normalize();
  return next;
}

double tilt_angle(const Quat& q) {
  const Eigen::Matrix3d r = q.toRotationMatrix();
  return std::atan2(std::hypot(r(0, 2), r(1, 2)), r(2, 2));
}

double yaw_angle(const Quat& q) {
  const Quat n = q.normalized();
  return std::atan2(2.0 * (n.w() * n.z() + n.x() * n.y()),
                    1.0 - 2.0 * (n.y() * n.y() + n.z() * n.z()));
}

}  // namespace quadbench
