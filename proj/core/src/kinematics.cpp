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

#include "quadbench/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quadbench/errors.hpp"

namespace quadbench {

Unreachable::Unreachable(double distance, double max_reach)
    : Error([&] {
        std::ostringstream os;
        os << "IK target unreachable: hip distance " << distance << " m, max reach "
           << max_reach << " m";
        return os.str();
      }()),
      distance_(distance),
      max_reach_(max_reach) {}

std::string_view leg_name(Leg leg) {
  switch (leg) {
    case Leg::FR: return "FR";
    case Leg::FL: return "FL";
    case Leg::BR: return "BR";
    case Leg::BL: return "BL";
  }
  return "?";
}

void RobotGeometry::validate() const {
  auto require = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string("geometry.") + name + " must be strictly positive");
    }
  };
  require(body_length, "body_length");
  require(body_width, "body_width");
  require(hip_offset, "hip_offset");
  require(l_upper, "l_upper");
  require(l_lower, "l_lower");
  require(body_mass, "body_mass");
  require(body_height, "body_height");
}

Vec3 RobotGeometry::hip_origin(Leg leg) const {
  const double x = is_front(leg) ? 0.5 * body_length : -0.5 * body_length;
  const double y = is_left(leg) ? 0.5 * body_width : -0.5 * body_width;
  return {x, y, 0.0};
}

double RobotGeometry::lateral_offset(Leg leg) const {
  return is_left(leg) ? hip_offset : -hip_offset;
}

double RobotGeometry::max_reach() const {
  return std::hypot(l_upper + l_lower, hip_offset);
}

Vec3 RobotGeometry::base_inertia() const {
  const double k = body_mass / 12.0;
  const double l2 = body_length * body_length;
  const double w2 = body_width * body_width;
  const double h2 = body_height * body_height;
  return {k * (w2 + h2), k * (l2 + h2), k * (l2 + w2)};
}

namespace {

// Foot position in the un-rolled leg frame (before abduction).
Vec3 planar_foot(double lateral, double hip, double knee, const RobotGeometry& g) {
  return {g.l_upper * std::sin(hip) + g.l_lower * std::sin(hip + knee), lateral,
          -g.l_upper * std::cos(hip) - g.l_lower * std::cos(hip + knee)};
}

Vec3 roll(double angle, const Vec3& v) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {v.x(), c * v.y() - s * v.z(), s * v.y() + c * v.z()};
}

}  // namespace

Vec3 forward_kinematics(Leg leg, const LegJoints& q, const RobotGeometry& geom) {
  const Vec3 v = planar_foot(geom.lateral_offset(leg), q[1], q[2], geom);
  return geom.hip_origin(leg) + roll(q[0], v);
}

Mat3 leg_jacobian(Leg leg, const LegJoints& q, const RobotGeometry& geom) {
  const double ab = q[0];
  const double hip = q[1];
  const double knee = q[2];
  const Vec3 v = planar_foot(geom.lateral_offset(leg), hip, knee, geom);
  const double ca = std::cos(ab);
  const double sa = std::sin(ab);

  // d/d(ab) of roll(ab) * v
  const Vec3 d_ab{0.0, -sa * v.y() - ca * v.z(), ca * v.y() - sa * v.z()};
  // d/d(hip) of the planar foot is (-pz, 0, px)
  const Vec3 d_hip = roll(ab, Vec3{-v.z(), 0.0, v.x()});
  const Vec3 d_knee =
      roll(ab, Vec3{geom.l_lower * std::cos(hip + knee), 0.0, geom.l_lower * std::sin(hip + knee)});

  Mat3 jac;
  jac.col(0) = d_ab;
  jac.col(1) = d_hip;
  jac.col(2) = d_knee;
  return jac;
}

namespace {

struct IkSolution {
  bool ok = false;
  double distance = 0.0;
  LegJoints q = LegJoints::Zero();
};

IkSolution solve_ik(Leg leg, const Vec3& target, const RobotGeometry& geom) {
  IkSolution out;
  const Vec3 p = target - geom.hip_origin(leg);
  out.distance = p.norm();
  const double lateral = geom.lateral_offset(leg);

  // Abduction: the leg plane sits at `lateral` from the hip; the foot lies
  // below the hip in that plane.
  const double r_yz_sq = p.y() * p.y() + p.z() * p.z();
  const double pz_sq = r_yz_sq - lateral * lateral;
  if (pz_sq <= 0.0) return out;
  const double pz = -std::sqrt(pz_sq);
  const double ab = std::atan2(p.z(), p.y()) - std::atan2(pz, lateral);

  // Planar two-link problem in (px, pz).
  const double px = p.x();
  const double d = std::hypot(px, pz);
  const double l1 = geom.l_upper;
  const double l2 = geom.l_lower;
  const double outer = l1 + l2;
  const double inner = std::abs(l1 - l2);
  constexpr double kSlack = 1e-12;
  if (d > outer + kSlack || d < inner - kSlack) return out;

  // Half-angle form keeps the knee accurate away from full extension.
  const double num = std::max(0.0, (outer - d) * (outer + d));
  const double den = std::max(0.0, (d - inner) * (d + inner));
  const double knee = 2.0 * std::atan2(std::sqrt(num), std::sqrt(den));
  const double hip =
      std::atan2(px, -pz) - std::atan2(l2 * std::sin(knee), l1 + l2 * std::cos(knee));

  out.ok = true;
  out.q = LegJoints{std::remainder(ab, 2.0 * M_PI), hip, knee};
  return out;
}

}  // namespace

LegJoints inverse_kinematics(Leg leg, const Vec3& target, const RobotGeometry& geom) {
  const IkSolution sol = solve_ik(leg, target, geom);
  if (!sol.ok) throw Unreachable(sol.distance, geom.max_reach());
  return sol.q;
}

bool is_reachable(Leg leg, const Vec3& target, const RobotGeometry& geom) {
  return solve_ik(leg, target, geom).ok;
}

Vec3 foot_velocity(Leg leg, const LegJoints& q, const LegJoints& qd,
                   const RobotGeometry& geom) {
  return leg_jacobian(leg, q, geom) * qd;
}

}  // namespace quadbench
