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

#include "quadbench/gait.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "quadbench/errors.hpp"

namespace quadbench {

void GaitParams::validate(const RobotGeometry& geom) const {
  auto fail = [](const std::string& msg) { throw ConfigError("gait." + msg); };
  if (!(frequency > 0.0) || !std::isfinite(frequency)) fail("frequency must be > 0");
  if (!(stance_fraction > 0.0 && stance_fraction < 1.0)) fail("stance_fraction must be in (0, 1)");
  if (!(step_height >= 0.0) || !std::isfinite(step_height)) fail("step_height must be >= 0");
  if (!(stance_depth >= 0.0) || !std::isfinite(stance_depth)) fail("stance_depth must be >= 0");
  for (double off : phase_offsets) {
    if (!(off >= 0.0 && off < 1.0)) fail("phase_offsets must lie in [0, 1)");
  }
  if (!(stand_height > 0.0)) fail("stand_height must be > 0");
  for (Leg leg : kAllLegs) {
    if (!is_reachable(leg, neutral_foothold(leg, *this, geom), geom)) {
      fail("stand_height is outside the leg workspace");
    }
  }
}

LegPhase leg_phase(double t, Leg leg, const GaitParams& gp) {
  double cycles = t * gp.frequency + gp.phase_offsets[index(leg)];
  double phase = cycles - std::floor(cycles);
  if (phase >= 1.0) phase = 0.0;
  return {phase, phase < gp.stance_fraction};
}

Vec3 neutral_foothold(Leg leg, const GaitParams& gp, const RobotGeometry& geom) {
  return geom.hip_origin(leg) + Vec3{0.0, geom.lateral_offset(leg), -gp.stand_height};
}

Vec3 stance_velocity(const Vec3& r, const VelocityCommand& cmd) {
  return {-(cmd.v_x - cmd.omega_z * r.y()), -(cmd.v_y + cmd.omega_z * r.x()), 0.0};
}

namespace {

double stance_duration(const GaitParams& gp) { return gp.stance_fraction / gp.frequency; }
double swing_duration(const GaitParams& gp) { return (1.0 - gp.stance_fraction) / gp.frequency; }

// sin(x)/x, stable near zero.
double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// Flow of the stance velocity field for time tau starting from `start`:
// a rotation by -omega*tau about the instantaneous centre plus translation.
Vec3 flow(const Vec3& start, const VelocityCommand& cmd, double tau) {
  const double phi = cmd.omega_z * tau;
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  // (I - Rz(-phi)) / phi = [[a, -b], [b, a]]
  const double half = 0.5 * phi;
  const double a = std::sin(half) * sinc(half);
  const double b = sinc(phi);
  const double wx = -cmd.v_y;
  const double wy = cmd.v_x;
  return {c * start.x() + s * start.y() + tau * (a * wx - b * wy),
          -s * start.x() + c * start.y() + tau * (b * wx + a * wy), start.z()};
}

struct Endpoint {
  Vec3 r;
  Vec3 v;
};

// Stance state at normalized stance progress u in [0, 1].
Endpoint stance_state(double u, const VelocityCommand& cmd, Leg leg, const GaitParams& gp,
                      const RobotGeometry& geom) {
  const double t_stance = stance_duration(gp);
  const double tau = (u - 0.5) * t_stance;
  Vec3 r = flow(neutral_foothold(leg, gp, geom), cmd, tau);
  r.z() = -gp.stand_height - gp.stance_depth * std::sin(M_PI * u);
  Vec3 v = stance_velocity(r, cmd);
  v.z() = -gp.stance_depth * M_PI * std::cos(M_PI * u) / t_stance;
  return {r, v};
}

}  // namespace

FootTarget stance_target(double phase, const VelocityCommand& cmd, Leg leg, const GaitParams& gp,
                         const RobotGeometry& geom) {
  const Endpoint e = stance_state(phase / gp.stance_fraction, cmd, leg, gp, geom);
  return {e.r, e.v};
}

FootTarget swing_target(double phase, const VelocityCommand& cmd, Leg leg, const GaitParams& gp,
                        const RobotGeometry& geom) {
  const double t_swing = swing_duration(gp);
  const double u = (phase - gp.stance_fraction) / (1.0 - gp.stance_fraction);
  const Endpoint lift = stance_state(1.0, cmd, leg, gp, geom);
  const Endpoint land = stance_state(0.0, cmd, leg, gp, geom);

  // Cubic Hermite basis and derivatives in u.
  const double u2 = u * u;
  const double u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1;
  const double h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2;
  const double h11 = u3 - u2;
  const double d00 = 6 * u2 - 6 * u;
  const double d10 = 3 * u2 - 4 * u + 1;
  const double d01 = -6 * u2 + 6 * u;
  const double d11 = 3 * u2 - 2 * u;

  FootTarget out;
  out.r_ref = h00 * lift.r + h10 * t_swing * lift.v + h01 * land.r + h11 * t_swing * land.v;
  out.v_ref = (d00 * lift.r + d01 * land.r) / t_swing + d10 * lift.v + d11 * land.v;

  const double bump = std::sin(M_PI * u);
  out.r_ref.z() += gp.step_height * bump * bump;
  out.v_ref.z() += gp.step_height * M_PI * std::sin(2.0 * M_PI * u) / t_swing;
  return out;
}

FootTarget foot_target(double phase, const VelocityCommand& cmd, Leg leg, const GaitParams& gp,
                       const RobotGeometry& geom) {
  return phase < gp.stance_fraction ? stance_target(phase, cmd, leg, gp, geom)
                                    : swing_target(phase, cmd, leg, gp, geom);
}

LegCommands controller_step(double t, const VelocityCommand& cmd, const GaitParams& gp,
                            const RobotGeometry& geom) {
  // Zero twist with no step height is a pure stand: all feet share the load.
  const bool standing =
      cmd.v_x == 0.0 && cmd.v_y == 0.0 && cmd.omega_z == 0.0 && gp.step_height == 0.0;
  std::array<LegPhase, kNumLegs> phases;
  int n_stance = 0;
  for (Leg leg : kAllLegs) {
    phases[index(leg)] = leg_phase(t, leg, gp);
    if (standing) phases[index(leg)].in_stance = true;
    n_stance += phases[index(leg)].in_stance ? 1 : 0;
  }
  const double support = n_stance > 0 ? geom.body_mass * kGravity / n_stance : 0.0;

  LegCommands cmds;
  for (Leg leg : kAllLegs) {
    const LegPhase& lp = phases[index(leg)];
    const FootTarget target = foot_target(lp.phase, cmd, leg, gp, geom);
    if (!is_reachable(leg, target.r_ref, geom)) {
      std::ostringstream os;
      os << "gait target for leg " << leg_name(leg) << " at phase " << lp.phase
         << " leaves the workspace (" << target.r_ref.transpose() << ")";
      throw TargetUnreachable(os.str());
    }
    FootCommand fc;
    fc.r_ref = target.r_ref;
    fc.v_ref = target.v_ref;
    fc.f_ff = lp.in_stance ? Vec3{0.0, 0.0, -support} : Vec3::Zero();
    cmds[index(leg)] = fc;
  }
  return cmds;
}

}  // namespace quadbench
