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

#include "quadbench/actuator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quadbench/errors.hpp"

namespace quadbench {

void ActuatorParams::validate() const {
  auto require = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string("actuator.") + name + " must be strictly positive");
    }
  };
  require(k_t, "k_t");
  require(gear_ratio, "gear_ratio");
  require(coulomb, "coulomb");
  require(damping, "damping");
  require(load_friction, "load_friction");
  require(output_inertia, "output_inertia");
  require(max_speed, "max_speed");
  require(bandwidth_hz, "bandwidth_hz");
  require(i_max, "i_max");
  require(i_continuous, "i_continuous");
  require(winding_resistance, "winding_resistance");
  if (load_friction >= gear_ratio) {
    throw ConfigError("actuator.load_friction must be below actuator.gear_ratio");
  }
}

double motor_torque(double current, const ActuatorParams& p) { return p.k_t * current; }

double friction_torque(double omega, double motor_torque, const ActuatorParams& p) {
  const double s = sgn(omega);
  return -p.coulomb * s - p.damping * omega - p.load_friction * s * std::abs(motor_torque);
}

double output_torque(double current, double omega, const ActuatorParams& p) {
  const double tm = motor_torque(current, p);
  return p.gear_ratio * tm + friction_torque(omega, tm, p);
}

double clamp_current(double current, const ActuatorParams& p) {
  return std::clamp(current, -p.i_max, p.i_max);
}

CurrentCommand current_for_torque(double torque, double omega, const ActuatorParams& p) {
  // gear_ratio*tm - load*s*|tm| = torque + coulomb*s + damping*omega.
  // gear_ratio > load, so sgn(tm) = sgn(rhs) and the branch is explicit.
  const double s = sgn(omega);
  const double rhs = torque + p.coulomb * s + p.damping * omega;
  const double slope = p.gear_ratio - p.load_friction * s * sgn(rhs);
  const double raw = rhs / (slope * p.k_t);
  const double clamped = clamp_current(raw, p);
  return {clamped, clamped != raw};
}

ActuatorState current_lag_step(double i_cmd, ActuatorState state, double dt,
                               const ActuatorParams& p) {
  const double alpha = -std::expm1(-2.0 * M_PI * p.bandwidth_hz * dt);
  state.i_filtered += alpha * (clamp_current(i_cmd, p) - state.i_filtered);
  state.i_filtered = clamp_current(state.i_filtered, p);
  return state;
}

std::vector<DynoSample> dyno_torque_surface(std::span<const double> speeds,
                                            std::span<const double> currents,
                                            const ActuatorParams& p) {
  std::vector<DynoSample> out;
  out.reserve(speeds.size() * currents.size());
  for (double w : speeds) {
    for (double i : currents) out.push_back({w, i, output_torque(i, w, p)});
  }
  return out;
}

std::vector<BodeSample> frequency_response(std::span<const double> freqs_hz,
                                           const ActuatorParams& p) {
  constexpr double kDt = 1e-4;
  constexpr double kMean = 2.5;  // 0..5 A sweep
  constexpr double kAmplitude = 2.5;
  const double tau = 1.0 / (2.0 * M_PI * p.bandwidth_hz);
  const double dc_torque = p.gear_ratio * p.k_t * kAmplitude;

  std::vector<BodeSample> out;
  out.reserve(freqs_hz.size());
  for (double f : freqs_hz) {
    const double period = 1.0 / f;
    const auto settle_periods = static_cast<long>(std::ceil(20.0 * tau / period));
    const long steps_per_period = std::lround(period / kDt);
    const double dt = period / static_cast<double>(steps_per_period);
    const long measure_periods = 4;

    ActuatorState st{kMean, 0.0};
    double in_phase = 0.0;
    double quadrature = 0.0;
    const long total = (settle_periods + measure_periods) * steps_per_period;
    const long start = settle_periods * steps_per_period;
    for (long k = 0; k < total; ++k) {
      const double t = static_cast<double>(k + 1) * dt;
      const double i_cmd = kMean + kAmplitude * std::sin(2.0 * M_PI * f * t);
      st = current_lag_step(i_cmd, st, dt, p);
      if (k >= start) {
        // Locked output shaft: omega = 0, so no friction acts.
        const double torque = output_torque(st.i_filtered, 0.0, p) - p.gear_ratio * p.k_t * kMean;
        in_phase += torque * std::sin(2.0 * M_PI * f * t);
        quadrature += torque * std::cos(2.0 * M_PI * f * t);
      }
    }
    const double n = static_cast<double>(measure_periods * steps_per_period);
    const double amplitude = 2.0 * std::hypot(in_phase, quadrature) / n;
    out.push_back({f, amplitude / dc_torque});
  }
  return out;
}

std::vector<double> default_dyno_speeds() { return {0.5, 1.0, 2.0, 5.0, 10.0, 15.0, 20.0}; }

std::vector<double> default_dyno_currents(const ActuatorParams& p) {
  std::vector<double> out;
  constexpr int kSteps = 40;
  for (int k = 0; k <= kSteps; ++k) {
    out.push_back(-p.i_max + 2.0 * p.i_max * static_cast<double>(k) / kSteps);
  }
  return out;
}

std::vector<double> default_bode_frequencies() {
  std::vector<double> out;
  out.push_back(0.5);
  for (int f = 1; f <= 40; ++f) out.push_back(static_cast<double>(f));
  return out;
}

}  // namespace quadbench
