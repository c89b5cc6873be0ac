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

#include "quadbench/sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>

#include <Eigen/LU>

#include "quadbench/errors.hpp"

namespace quadbench {

namespace {
constexpr double kMaxPosition = 100.0;
constexpr double kMaxVelocity = 100.0;
}  // namespace

void SimParams::validate() const {
  if (!(dt > 0.0 && dt <= 0.002)) throw ConfigError("sim.dt must lie in (0, 0.002]");
  if (!(high_level_hz > 0.0)) throw ConfigError("sim.high_level_hz must be > 0");
  if (!(stiction_fraction >= 0.0)) throw ConfigError("sim.stiction_fraction must be >= 0");
  if (!(stiction_speed >= 0.0)) throw ConfigError("sim.stiction_speed must be >= 0");
  if (!(imu_accel_noise >= 0.0)) throw ConfigError("sim.imu_accel_noise must be >= 0");
  if (!(imu_gyro_noise >= 0.0)) throw ConfigError("sim.imu_gyro_noise must be >= 0");
  if (!(filter_gain >= 0.0)) throw ConfigError("sim.filter_gain must be >= 0");
}

LegJoints SimState::leg_q(Leg leg) const {
  const std::size_t b = 3 * index(leg);
  return {q[b], q[b + 1], q[b + 2]};
}

double stiction_torque(double nominal_torque, double omega, const SimParams& params,
                       double unit_draw) {
  if (!params.stiction || std::abs(omega) >= params.stiction_speed) return 0.0;
  return unit_draw * params.stiction_fraction * std::abs(nominal_torque);
}

Simulator::Simulator(RobotGeometry geom, ActuatorParams actuator, Terrain terrain,
                     SimParams params, std::uint64_t seed)
    : geom_(geom),
      actuator_(actuator),
      terrain_(std::move(terrain)),
      params_(params),
      inertia_(geom_.base_inertia()),
      rng_(seed) {
  geom_.validate();
  actuator_.validate();
  terrain_.validate();
  params_.validate();
}

Vec3 Simulator::foot_position_world(const SimState& state, Leg leg) const {
  return state.position + state.orientation * forward_kinematics(leg, state.leg_q(leg), geom_);
}

SimState Simulator::standing_state(double stand_height) const {
  SimState s;
  const double per_leg = geom_.body_mass * kGravity / kNumLegs;
  const double sink = per_leg / terrain_.stiffness;
  for (Leg leg : kAllLegs) {
    const Vec3 foot = geom_.hip_origin(leg) + Vec3{0.0, geom_.lateral_offset(leg), -stand_height};
    const LegJoints q = inverse_kinematics(leg, foot, geom_);
    const Vec3 tau = force_to_torque(leg_jacobian(leg, q, geom_), Vec3{0.0, 0.0, -per_leg});
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t k = 3 * index(leg) + j;
      s.q[k] = q[j];
      s.actuators[k].i_filtered = current_for_torque(tau[j], 0.0, actuator_).current;
    }
  }
  s.position = {0.0, 0.0, terrain_.ground_height + stand_height - sink};
  return s;
}

SimState Simulator::step(const SimState& state, const std::array<double, kNumJoints>& currents,
                         StepDiagnostics* diag) {
  const double dt = params_.dt;
  const Eigen::Matrix3d rot = state.orientation.toRotationMatrix();
  StepDiagnostics local;
  StepDiagnostics& d = diag ? *diag : local;
  d = StepDiagnostics{};

  SimState next = state;

  // Generalized velocity: base linear (world), base angular (body), joints.
  constexpr int kDof = 6 + static_cast<int>(kNumJoints);
  using VecN = Eigen::Matrix<double, kDof, 1>;
  using MatN = Eigen::Matrix<double, kDof, kDof>;
  using Map3N = Eigen::Matrix<double, 3, kDof>;

  // Contacts: explicit forces, plus their velocity Jacobian for the implicit
  // damping term. Ground damping against the light base roll inertia and the
  // reflected joint inertias is far too stiff for explicit Euler at 1 kHz.
  VecN force = VecN::Zero();
  MatN damping = MatN::Zero();
  for (Leg leg : kAllLegs) {
    const LegJoints q = state.leg_q(leg);
    const std::size_t b = 3 * index(leg);
    const LegJoints qd{state.qd[b], state.qd[b + 1], state.qd[b + 2]};
    const Mat3 jac = leg_jacobian(leg, q, geom_);
    const Vec3 r_body = forward_kinematics(leg, q, geom_);
    const Vec3 v_body = state.angular_velocity.cross(r_body) + jac * qd;
    const Vec3 p_world = state.position + rot * r_body;
    const Vec3 v_world = state.linear_velocity + rot * v_body;

    const ContactResult c = contact(p_world, v_world, terrain_);
    d.contacts[index(leg)] = c;
    d.contact_dissipation += c.dissipation;
    if (!c.active) continue;

    Mat3 r_cross;
    r_cross << 0.0, -r_body.z(), r_body.y(), r_body.z(), 0.0, -r_body.x(), -r_body.y(),
        r_body.x(), 0.0;
    Map3N g = Map3N::Zero();  // foot velocity (world) per unit generalized velocity
    g.block<3, 3>(0, 0) = Mat3::Identity();
    g.block<3, 3>(0, 3) = -rot * r_cross;
    g.block<3, 3>(0, 6 + static_cast<Eigen::Index>(b)) = rot * jac;
    force += g.transpose() * c.force;

    const Vec3& n = c.normal;
    const Mat3 nn = n * n.transpose();
    Mat3 d_world = Mat3::Zero();
    if (v_world.dot(n) < 0.0) d_world += terrain_.damping * nn;
    const Vec3 v_t = v_world - v_world.dot(n) * n;
    const double cap = terrain_.mu * c.normal_force;
    if (terrain_.tangential_damping * v_t.norm() <= cap) {
      d_world += terrain_.tangential_damping * (Mat3::Identity() - nn);
    } else {
      // Sliding at the cone: only the direction of the force depends on v_t.
      const Vec3 t = v_t.normalized();
      d_world += cap / v_t.norm() * (Mat3::Identity() - nn - t * t.transpose());
    }
    damping += g.transpose() * d_world * g;
  }

  // Base: gravity and gyroscopic terms.
  const double mass = geom_.body_mass;
  const Vec3& w = state.angular_velocity;
  force.segment<3>(0) += Vec3{0.0, 0.0, -mass * kGravity};
  force.segment<3>(3) -= w.cross(inertia_.cwiseProduct(w));

  // Actuators.
  const double inertia = actuator_.output_inertia;
  VecN friction = VecN::Zero();
  for (std::size_t k = 0; k < kNumJoints; ++k) {
    const auto e = static_cast<Eigen::Index>(6 + k);
    const double omega = state.qd[k];
    ActuatorState act = current_lag_step(currents[k], state.actuators[k], dt, actuator_);
    act.omega = omega;
    const double tm = motor_torque(act.i_filtered, actuator_);
    const double drive = actuator_.gear_ratio * tm;
    const double disturbance = params_.stiction
                                   ? stiction_torque(drive, omega, params_, unit_(rng_))
                                   : 0.0;
    force[e] += drive + disturbance;
    friction[e] = friction_torque(omega, tm, actuator_);
    d.output_torque[k] = drive + disturbance;
    d.electrical_power += act.i_filtered * act.i_filtered * actuator_.winding_resistance +
                          tm * actuator_.gear_ratio * omega;
    d.actuator_dissipation += act.i_filtered * act.i_filtered * actuator_.winding_resistance;
    next.actuators[k] = act;
  }

  // Linearly implicit step: (M + dt C) dv = dt f.
  VecN mass_diag;
  mass_diag << Vec3::Constant(mass), inertia_, VecN::Constant(inertia).tail<kNumJoints>();
  MatN system = dt * damping;
  system.diagonal() += mass_diag;
  const Eigen::LDLT<MatN> solver(system);
  const VecN dv = solver.solve(dt * (force + friction));
  const VecN dv_free = solver.solve(dt * force);

  for (std::size_t k = 0; k < kNumJoints; ++k) {
    const auto e = static_cast<Eigen::Index>(6 + k);
    const double omega = state.qd[k];
    double fric = friction[e];
    double qd_new = omega + dv[e];
    if (omega != 0.0 && sgn(qd_new) != sgn(omega) && sgn(omega + dv_free[e]) == sgn(omega)) {
      // Friction alone would reverse the joint: it stops instead.
      fric = -inertia * omega / dt - (force[e] - damping.row(e).dot(dv_free));
      qd_new = 0.0;
    }
    qd_new = std::clamp(qd_new, -actuator_.max_speed, actuator_.max_speed);

    d.output_torque[k] += fric;
    d.actuator_dissipation += -fric * omega;
    next.qd[k] = qd_new;
    next.q[k] = state.q[k] + dt * qd_new;
    next.actuators[k].omega = qd_new;
  }

  const Vec3 accel = dv.segment<3>(0) / dt;
  next.linear_acceleration = accel;
  // Exact under constant acceleration, so a ballistic flight has no drift.
  next.linear_velocity = state.linear_velocity + dt * accel;
  next.position = state.position + dt * state.linear_velocity + 0.5 * dt * dt * accel;
  next.angular_velocity = w + dv.segment<3>(3);

  const Vec3 dtheta = dt * next.angular_velocity;
  const double angle = dtheta.norm();
  if (angle > 0.0) {
    next.orientation = state.orientation * Quat(Eigen::AngleAxisd(angle, dtheta / angle));
  }
  next.orientation.normalize();

  next.t = state.t + dt;
  next.electrical_energy = state.electrical_energy + dt * d.electrical_power;

  const bool finite = next.position.allFinite() && next.linear_velocity.allFinite() &&
                      next.angular_velocity.allFinite() && next.orientation.coeffs().allFinite();
  if (!finite || next.position.cwiseAbs().maxCoeff() > kMaxPosition ||
      next.linear_velocity.cwiseAbs().maxCoeff() > kMaxVelocity ||
      next.angular_velocity.cwiseAbs().maxCoeff() > kMaxVelocity) {
    std::ostringstream os;
    os << "simulation diverged at t = " << next.t << " s (position "
       << next.position.transpose() << ", velocity " << next.linear_velocity.transpose() << ")";
    throw NumericalDivergence(os.str());
  }
  return next;
}

}  // namespace quadbench
