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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quadbench/errors.hpp"
#include "quadbench/rng.hpp"

namespace quadbench {

namespace {

template <std::size_t N>
std::array<double, N> to_array(const Eigen::Matrix<double, static_cast<int>(N), 1>& v) {
  std::array<double, N> out{};
  for (std::size_t k = 0; k < N; ++k) out[k] = v[static_cast<Eigen::Index>(k)];
  return out;
}

TickRecord make_tick(const SimState& s, const ActuatorParams& act,
                     const std::array<ContactResult, kNumLegs>& contacts,
                     const LegCommands& legs) {
  TickRecord r;
  r.t = s.t;
  r.pos = to_array<3>(s.position);
  r.quat = {s.orientation.w(), s.orientation.x(), s.orientation.y(), s.orientation.z()};
  r.vel = to_array<3>(s.linear_velocity);
  r.omega = to_array<3>(s.angular_velocity);
  r.q = s.q;
  r.qd = s.qd;
  for (std::size_t k = 0; k < kNumJoints; ++k) {
    const double i = s.actuators[k].i_filtered;
    r.current[k] = i;
    r.power[k] = i * i * act.winding_resistance + act.k_t * i * act.gear_ratio * s.qd[k];
  }
  for (Leg leg : kAllLegs) {
    const std::size_t l = index(leg);
    const ContactResult& c = contacts[l];
    r.contact[l] = c.active;
    for (std::size_t j = 0; j < 3; ++j) {
      r.contact_force[3 * l + j] = c.force[static_cast<Eigen::Index>(j)];
    }
    if (const auto* f = std::get_if<FootCommand>(&legs[l])) {
      for (std::size_t j = 0; j < 3; ++j) {
        r.target[3 * l + j] = f->r_ref[static_cast<Eigen::Index>(j)];
      }
    }
  }
  return r;
}

}  // namespace

TrialLog run_episode(const EpisodeSetup& setup, const HighLevelController& controller,
                     double duration, std::uint64_t seed, const FinishPredicate& finish) {
  if (!(duration > 0.0)) throw PreconditionError("episode duration must be > 0");
  Simulator sim(setup.geometry, setup.actuator, setup.terrain, setup.sim, seed);
  std::mt19937_64 imu_rng(derive_seed(seed, SeedStream::kImuNoise, 0));

  TrialLog log;
  log.meta = setup.meta;
  log.meta.seed = seed;
  log.meta.dt = setup.sim.dt;
  log.meta.body_mass = setup.geometry.body_mass;
  log.meta.k_t = setup.actuator.k_t;
  log.meta.gear_ratio = setup.actuator.gear_ratio;
  log.meta.winding_resistance = setup.actuator.winding_resistance;

  const double dt = setup.sim.dt;
  const auto total_ticks = static_cast<long>(std::llround(duration / dt));
  const long hl_every = std::max(1L, std::lround(1.0 / (setup.sim.high_level_hz * dt)));
  log.ticks.reserve(static_cast<std::size_t>(total_ticks) + 1);

  SimState state = setup.initial;
  Quat attitude = state.orientation;

  std::array<ContactResult, kNumLegs> initial_contacts;
  for (Leg leg : kAllLegs) {
    initial_contacts[index(leg)] = contact(sim.foot_position_world(state, leg), Vec3::Zero(),
                                           setup.terrain);
  }

  HighLevelCommand command;
  for (Leg leg : kAllLegs) command.legs[index(leg)] = TorqueCommand{};
  command.mode = ControlMode::TorquePassthrough;
  log.ticks.push_back(make_tick(state, setup.actuator, initial_contacts, command.legs));

  StepDiagnostics diag;
  for (long k = 0; k < total_ticks; ++k) {
    if (k % hl_every == 0) {
      Observation obs;
      obs.t = state.t;
      obs.joints = state.joints();
      obs.imu = imu_read(state, setup.sim, &imu_rng);
      obs.attitude = attitude;
      try {
        command = controller(obs);
      } catch (const NumericalDivergence&) {
        throw;
      } catch (const std::exception& e) {
        log.outcome = {false, state.t, std::string("controller error: ") + e.what()};
        log.sim_energy_j = state.electrical_energy;
        return log;
      }
    }
    LowLevelOutput low;
    try {
      low = low_level_step(command.mode, command.legs, state.joints(), setup.geometry,
                           setup.gains, setup.actuator);
    } catch (const CommandModeMismatch& e) {
      log.outcome = {false, state.t, std::string("controller error: ") + e.what()};
      log.sim_energy_j = state.electrical_energy;
      return log;
    }
    state = sim.step(state, low.current, &diag);
    attitude = estimate_orientation(attitude, imu_read(state, setup.sim, &imu_rng), dt,
                                    setup.sim.filter_gain);
    log.ticks.push_back(make_tick(state, setup.actuator, diag.contacts, command.legs));
    if (finish && finish(state)) {
      log.outcome = {true, state.t, ""};
      log.sim_energy_j = state.electrical_energy;
      return log;
    }
  }
  std::ostringstream os;
  os << "finish condition not reached within " << duration << " s";
  log.outcome = {false, state.t, os.str()};
  log.sim_energy_j = state.electrical_energy;
  return log;
}

ReferenceTrotController::ReferenceTrotController(GaitParams gait, RobotGeometry geometry,
                                                 Profile profile)
    : gait_(gait), geometry_(geometry), profile_(profile) {}

VelocityCommand ReferenceTrotController::velocity_at(double t, const Quat& attitude) const {
  VelocityCommand cmd;
  const double ramp = profile_.ramp_time > 0.0 ? std::min(1.0, t / profile_.ramp_time) : 1.0;
  cmd.v_x = ramp * profile_.target_speed;
  cmd.v_y = ramp * profile_.lateral_speed;
  if (profile_.heading_gain > 0.0) {
    const double correction = -profile_.heading_gain * yaw_angle(attitude);
    cmd.omega_z = std::clamp(correction, -profile_.max_yaw_rate, profile_.max_yaw_rate);
  } else {
    cmd.omega_z = ramp * profile_.yaw_rate;
  }
  return cmd;
}

HighLevelCommand ReferenceTrotController::operator()(const Observation& obs) const {
  if (tilt_angle(obs.attitude) > profile_.max_tilt) {
    std::ostringstream os;
    os << "robot fell (tilt " << tilt_angle(obs.attitude) << " rad)";
    throw Error(os.str());
  }
  HighLevelCommand out;
  out.mode = ControlMode::TaskSpaceImpedance;
  out.legs = controller_step(obs.t, velocity_at(obs.t, obs.attitude), gait_, geometry_);
  return out;
}

}  // namespace quadbench
