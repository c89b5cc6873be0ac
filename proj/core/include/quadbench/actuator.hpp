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

// Brushless gearmotor + FOC current controller model.
//
// Output torque = gear_ratio * k_t * i + friction, where friction has a
// Coulomb term, a viscous term on output speed, and a load-dependent term
// proportional to the input-side motor torque. Current tracking is a
// single-pole lag at the torque bandwidth.

#ifndef QUADBENCH_ACTUATOR_HPP_
#define QUADBENCH_ACTUATOR_HPP_

#include <span>
#include <vector>

namespace quadbench {

struct ActuatorParams {
  double k_t = 0.0069;            // Nm/A, at the gearbox input
  double gear_ratio = 36.0;
  double coulomb = 0.021;         // Nm
  double damping = 0.0045;        // Nms/rad, on output speed
  double load_friction = 10.0;    // coefficient on |motor torque|
  double output_inertia = 0.0024; // kg m^2, reflected
  double max_speed = 60.0;        // rad/s
  double bandwidth_hz = 17.0;
  double i_max = 10.0;            // A, peak
  double i_continuous = 5.6;      // A, warning threshold only
  double winding_resistance = 0.1;  // ohm, power metric only

  void validate() const;
};

struct ActuatorState {
  double i_filtered = 0.0;  // A
  double omega = 0.0;       // rad/s, output shaft
};

// sgn with sgn(0) = 0.
constexpr double sgn(double x) { return (x > 0.0) - (x < 0.0); }

double motor_torque(double current, const ActuatorParams& p);
double friction_torque(double omega, double motor_torque, const ActuatorParams& p);
double output_torque(double current, double omega, const ActuatorParams& p);

struct CurrentCommand {
  double current = 0.0;
  bool saturated = false;
};

// Inverts the friction model at the measured speed. At omega == 0 only the
// gear ratio is inverted (stiction is not predictable).
CurrentCommand current_for_torque(double torque, double omega, const ActuatorParams& p);

double clamp_current(double current, const ActuatorParams& p);

ActuatorState current_lag_step(double i_cmd, ActuatorState state, double dt,
                               const ActuatorParams& p);

struct DynoSample {
  double speed_rad_s;
  double current_a;
  double torque_nm;
};

std::vector<DynoSample> dyno_torque_surface(std::span<const double> speeds,
                                            std::span<const double> currents,
                                            const ActuatorParams& p);

struct BodeSample {
  double freq_hz;
  double gain;
};

// Drives the current lag with a 0..5 A sinusoid at each frequency against a
// locked output shaft and reports torque amplitude relative to DC.
std::vector<BodeSample> frequency_response(std::span<const double> freqs_hz,
                                           const ActuatorParams& p);

// Default grids used by the dyno tooling.
std::vector<double> default_dyno_speeds();
std::vector<double> default_dyno_currents(const ActuatorParams& p);
std::vector<double> default_bode_frequencies();

}  // namespace quadbench

#endif  // QUADBENCH_ACTUATOR_HPP_
