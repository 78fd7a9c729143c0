// Copyright 2026 The oddsens authors
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

#ifndef ODDSENS_VEHICLE_MODEL_HPP_
#define ODDSENS_VEHICLE_MODEL_HPP_

#include <Eigen/Core>

#include <array>
#include <string_view>
#include <vector>

#include "oddsens/numerics.hpp"

namespace oddsens
{

/// Planar double-track model: 10 states, 5 inputs, all four wheels resolved.
///
/// State layout (body frame: x forward, y left, z up):
///   0 X      inertial x position [m]
///   1 Y      inertial y position [m]
///   2 psi    yaw angle [rad], unwrapped
///   3 vx     body longitudinal velocity [m/s]
///   4 vy     body lateral velocity [m/s]
///   5 r      yaw rate [rad/s]
///   6..9     wheel spin speeds FL, FR, RL, RR [rad/s]
struct VehicleState
{
  static constexpr int kSize = 10;
  enum Index { kX = 0, kY, kPsi, kVx, kVy, kYawRate, kOmegaFL, kOmegaFR, kOmegaRL, kOmegaRR };

  Eigen::Matrix<double, kSize, 1> raw = Eigen::Matrix<double, kSize, 1>::Zero();

  double & X() { return raw[kX]; }
  double & Y() { return raw[kY]; }
  double & psi() { return raw[kPsi]; }
  double & vx() { return raw[kVx]; }
  double & vy() { return raw[kVy]; }
  double & yaw_rate() { return raw[kYawRate]; }
  double & omega(int wheel) { return raw[kOmegaFL + wheel]; }
  double X() const { return raw[kX]; }
  double Y() const { return raw[kY]; }
  double psi() const { return raw[kPsi]; }
  double vx() const { return raw[kVx]; }
  double vy() const { return raw[kVy]; }
  double yaw_rate() const { return raw[kYawRate]; }
  double omega(int wheel) const { return raw[kOmegaFL + wheel]; }

  static std::array<std::string_view, kSize> names();
};

/// Front road-wheel steering angle (equal left/right) and one torque per wheel.
struct VehicleInput
{
  static constexpr int kSize = 5;
  enum Index { kSteer = 0, kTorqueFL, kTorqueFR, kTorqueRL, kTorqueRR };

  Eigen::Matrix<double, kSize, 1> raw = Eigen::Matrix<double, kSize, 1>::Zero();

  double & steer() { return raw[kSteer]; }
  double & torque(int wheel) { return raw[kTorqueFL + wheel]; }
  double steer() const { return raw[kSteer]; }
  double torque(int wheel) const { return raw[kTorqueFL + wheel]; }

  static std::array<std::string_view, kSize> names();
};

/// Wheel indices used throughout: 0 FL, 1 FR, 2 RL, 3 RR.
enum Wheel { kFL = 0, kFR = 1, kRL = 2, kRR = 3 };

struct MagicFormulaCoeffs
{
  double B = 10.0;  ///< stiffness factor, > 0
  double C = 1.5;   ///< shape factor, in (1, 2]
  double D = 1.0;   ///< peak factor relative to mu*Fz, in (0, 1.5]
  double E = 0.5;   ///< curvature factor, < 1
};

/// Full parameter set of the plant. Every scalar is addressable by a fixed
/// index (see param_count/get/set) so the sensitivity machinery can treat the
/// model as F(x, u, P) with P a flat vector.
struct VehicleParams
{
  double mass = 1500.0;          ///< [kg]
  double yaw_inertia = 2456.0;   ///< Jz [kg m^2]
  double lf = 1.22;              ///< CoG to front axle [m]
  double lr = 1.45;              ///< CoG to rear axle [m]
  double track_front = 1.58;     ///< [m]
  double track_rear = 1.56;      ///< [m]
  double h_cg = 0.55;            ///< CoG height [m]
  double wheel_radius = 0.31;    ///< [m]
  double wheel_inertia = 1.2;    ///< spin inertia per wheel [kg m^2]
  double mu = 1.0;               ///< road-tire friction coefficient [-]
  double rho_air = 1.2041;       ///< [kg/m^3]
  double drag_area = 0.72;       ///< c_d * A [m^2]
  double roll_resistance = 0.012;///< rolling resistance coefficient [-]
  double gravity = 9.81;         ///< [m/s^2]

  MagicFormulaCoeffs front_long{11.0, 1.65, 1.00, 0.60};
  MagicFormulaCoeffs front_lat{9.0, 1.30, 0.95, -0.20};
  MagicFormulaCoeffs rear_long{11.0, 1.65, 1.00, 0.60};
  MagicFormulaCoeffs rear_lat{9.5, 1.30, 1.00, -0.20};

  double steer_max = 0.60;       ///< |delta_f| box [rad]
  double torque_max = 2000.0;    ///< |T_i| box [N m]
  double v_eps = 0.5;            ///< slip regularization speed [m/s]

  double wheelbase() const { return lf + lr; }

  /// Number of scalar parameters (K).
  static int param_count();
  /// Canonical parameter names, unit suffix free ("mass", "front_lat_B", ...).
  static std::string_view param_name(int idx);
  /// Index for a canonical name, -1 if unknown.
  static int param_index(std::string_view name);
  double get(int idx) const;
  void set(int idx, double value);

  // Indices of the analysis subset used by the default sensitivity selection.
  static constexpr int kIdxMass = 0;
  static constexpr int kIdxYawInertia = 1;
  static constexpr int kIdxLf = 2;
  static constexpr int kIdxMu = 9;
};

/// Throws ValidationError naming the offending field if any documented range
/// is violated (positive masses/lengths, mu in [0.05, 2], B > 0, C in (1, 2],
/// D in (0, 1.5], E < 1, ...).
void validate_params(const VehicleParams & p);

/// Reference parameter set for a mid-size passenger vehicle; passes validate_params.
VehicleParams default_params();

/// Per-wheel slip/load/force bundle. Forces are in the wheel frame.
struct WheelContact
{
  double kappa = 0.0;  ///< longitudinal slip [-]
  double alpha = 0.0;  ///< lateral slip angle [rad]
  double Fz = 0.0;     ///< vertical load [N]
  double Fx = 0.0;     ///< longitudinal contact force, wheel frame [N]
  double Fy = 0.0;     ///< lateral contact force, wheel frame [N]
};
using TireState = std::array<WheelContact, 4>;

/// Body-frame accelerations driving quasi-static load transfer. The plant
/// holds the value computed from the previous step's derivative (one-step
/// lag); zero at t = 0 means static loads.
struct AccelHint
{
  double ax = 0.0;  ///< [m/s^2]
  double ay = 0.0;  ///< [m/s^2]
};

/// Optional per-evaluation diagnostics of vehicle_dynamics.
struct DynamicsDebug
{
  TireState tires;
  AccelHint realized;       ///< body-frame accelerations of this evaluation
  bool input_clamped = false;
};

/// Pure-slip Magic Formula: F = mu * Fz * D * sin(C * atan(B*s - E*(B*s - atan(B*s)))).
/// Odd in s, |F| <= mu * Fz * D.
double magic_formula(double slip, double Fz, double mu, const MagicFormulaCoeffs & c);

/// Longitudinal slip and slip angle per wheel from double-track kinematics,
/// regularized at standstill by v_eps. Loads/forces in the result are zero.
TireState slip_quantities(const VehicleState & x, const VehicleInput & u,
                          const VehicleParams & p);

/// Quasi-static vertical loads: static split plus longitudinal and per-axle
/// lateral transfer, floored at zero and rescaled so the sum is exactly m*g.
std::array<double, 4> vertical_loads(const VehicleParams & p, double ax, double ay);

/// State derivative of the double-track model, xdot = F(u, x, P).
/// Inputs outside their boxes are clamped (flagged via debug).
/// Throws NonFiniteState if the derivative is non-finite.
Eigen::Matrix<double, VehicleState::kSize, 1> vehicle_dynamics(
  const VehicleState & x, const VehicleInput & u, const VehicleParams & p,
  const AccelHint & hint = {}, DynamicsDebug * debug = nullptr);

/// Body-frame accelerations implied by a state/derivative pair:
/// ax = vx_dot - r*vy, ay = vy_dot + r*vx.
AccelHint accel_from_derivative(const VehicleState & x,
                                const Eigen::Matrix<double, VehicleState::kSize, 1> & xdot);

/// One plant step: RK4 at dt with the input and the load-transfer hint held
/// constant, then the hint refreshed from the derivative at the accepted state.
struct PlantStepResult
{
  VehicleState state;
  AccelHint hint;
  TireState tires;  ///< contact state at the accepted state
};
PlantStepResult plant_step(const VehicleState & x, const VehicleInput & u,
                           const VehicleParams & p, const AccelHint & hint, double dt);

/// A recorded plant trajectory: n_steps+1 states, one held input and one held
/// load-transfer hint per step. This is what the sensitivity system replays.
struct RecordedTrajectory
{
  TimeGrid grid;
  std::vector<VehicleState> states;
  std::vector<VehicleInput> inputs;
  std::vector<AccelHint> hints;
};

/// Integrate the plant over a grid with a per-step input schedule
/// (inputs.size() == grid.n_steps), starting from the static-load hint.
RecordedTrajectory simulate_plant(const VehicleState & x0,
                                  const std::vector<VehicleInput> & inputs,
                                  const VehicleParams & p, const TimeGrid & grid);

}  // namespace oddsens

#endif  // ODDSENS_VEHICLE_MODEL_HPP_
