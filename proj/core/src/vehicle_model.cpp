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

#include "oddsens/vehicle_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oddsens
{

namespace
{

constexpr int kNumWheels = 4;

struct ParamEntry
{
  std::string_view name;
  double VehicleParams::* scalar = nullptr;
  MagicFormulaCoeffs VehicleParams::* mf = nullptr;
  double MagicFormulaCoeffs::* coeff = nullptr;
};

const std::array<ParamEntry, 33> & param_table()
{
  static const std::array<ParamEntry, 33> table = {{
    {"mass", &VehicleParams::mass, nullptr, nullptr},
    {"yaw_inertia", &VehicleParams::yaw_inertia, nullptr, nullptr},
    {"lf", &VehicleParams::lf, nullptr, nullptr},
    {"lr", &VehicleParams::lr, nullptr, nullptr},
    {"track_front", &VehicleParams::track_front, nullptr, nullptr},
    {"track_rear", &VehicleParams::track_rear, nullptr, nullptr},
    {"h_cg", &VehicleParams::h_cg, nullptr, nullptr},
    {"wheel_radius", &VehicleParams::wheel_radius, nullptr, nullptr},
    {"wheel_inertia", &VehicleParams::wheel_inertia, nullptr, nullptr},
    {"mu", &VehicleParams::mu, nullptr, nullptr},
    {"rho_air", &VehicleParams::rho_air, nullptr, nullptr},
    {"drag_area", &VehicleParams::drag_area, nullptr, nullptr},
    {"roll_resistance", &VehicleParams::roll_resistance, nullptr, nullptr},
    {"gravity", &VehicleParams::gravity, nullptr, nullptr},
    {"front_long_B", nullptr, &VehicleParams::front_long, &MagicFormulaCoeffs::B},
    {"front_long_C", nullptr, &VehicleParams::front_long, &MagicFormulaCoeffs::C},
    {"front_long_D", nullptr, &VehicleParams::front_long, &MagicFormulaCoeffs::D},
    {"front_long_E", nullptr, &VehicleParams::front_long, &MagicFormulaCoeffs::E},
    {"front_lat_B", nullptr, &VehicleParams::front_lat, &MagicFormulaCoeffs::B},
    {"front_lat_C", nullptr, &VehicleParams::front_lat, &MagicFormulaCoeffs::C},
    {"front_lat_D", nullptr, &VehicleParams::front_lat, &MagicFormulaCoeffs::D},
    {"front_lat_E", nullptr, &VehicleParams::front_lat, &MagicFormulaCoeffs::E},
    {"rear_long_B", nullptr, &VehicleParams::rear_long, &MagicFormulaCoeffs::B},
    {"rear_long_C", nullptr, &VehicleParams::rear_long, &MagicFormulaCoeffs::C},
    {"rear_long_D", nullptr, &VehicleParams::rear_long, &MagicFormulaCoeffs::D},
    {"rear_long_E", nullptr, &VehicleParams::rear_long, &MagicFormulaCoeffs::E},
    {"rear_lat_B", nullptr, &VehicleParams::rear_lat, &MagicFormulaCoeffs::B},
    {"rear_lat_C", nullptr, &VehicleParams::rear_lat, &MagicFormulaCoeffs::C},
    {"rear_lat_D", nullptr, &VehicleParams::rear_lat, &MagicFormulaCoeffs::D},
    {"rear_lat_E", nullptr, &VehicleParams::rear_lat, &MagicFormulaCoeffs::E},
    {"steer_max", &VehicleParams::steer_max, nullptr, nullptr},
    {"torque_max", &VehicleParams::torque_max, nullptr, nullptr},
    {"v_eps", &VehicleParams::v_eps, nullptr, nullptr},
  }};
  return table;
}

double smooth_sign(double v, double v_eps)
{
  return std::tanh(v / v_eps);
}

struct WheelLayout
{
  std::array<double, 4> x;  ///< wheel x position in body frame [m]
  std::array<double, 4> y;  ///< wheel y position in body frame [m]
};

WheelLayout wheel_layout(const VehicleParams & p)
{
  return WheelLayout{
    {p.lf, p.lf, -p.lr, -p.lr},
    {0.5 * p.track_front, -0.5 * p.track_front, 0.5 * p.track_rear, -0.5 * p.track_rear}};
}

const MagicFormulaCoeffs & long_coeffs(const VehicleParams & p, int wheel)
{
  return wheel < kRL ? p.front_long : p.rear_long;
}

const MagicFormulaCoeffs & lat_coeffs(const VehicleParams & p, int wheel)
{
  return wheel < kRL ? p.front_lat : p.rear_lat;
}

void require(bool ok, const std::string & what)
{
  if (!ok) {
    throw ValidationError("vehicle parameter out of range: " + what);
  }
}

void validate_mf(const MagicFormulaCoeffs & c, const std::string & which)
{
  require(c.B > 0.0, which + "_B must be > 0");
  require(c.C > 1.0 && c.C <= 2.0, which + "_C must be in (1, 2]");
  require(c.D > 0.0 && c.D <= 1.5, which + "_D must be in (0, 1.5]");
  require(c.E < 1.0, which + "_E must be < 1");
}

}  // namespace

std::array<std::string_view, VehicleState::kSize> VehicleState::names()
{
  return {"X", "Y", "psi", "vx", "vy", "yaw_rate",
          "omega_fl", "omega_fr", "omega_rl", "omega_rr"};
}

std::array<std::string_view, VehicleInput::kSize> VehicleInput::names()
{
  return {"delta_f", "torque_fl", "torque_fr", "torque_rl", "torque_rr"};
}

int VehicleParams::param_count()
{
  return static_cast<int>(param_table().size());
}

std::string_view VehicleParams::param_name(int idx)
{
  return param_table().at(static_cast<std::size_t>(idx)).name;
}

int VehicleParams::param_index(std::string_view name)
{
  const auto & table = param_table();
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].name == name) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

double VehicleParams::get(int idx) const
{
  const ParamEntry & e = param_table().at(static_cast<std::size_t>(idx));
  return e.scalar ? this->*(e.scalar) : (this->*(e.mf)).*(e.coeff);
}

void VehicleParams::set(int idx, double value)
{
  const ParamEntry & e = param_table().at(static_cast<std::size_t>(idx));
  if (e.scalar) {
    this->*(e.scalar) = value;
  } else {
    (this->*(e.mf)).*(e.coeff) = value;
  }
}

void validate_params(const VehicleParams & p)
{
  require(p.mass > 0.0, "mass must be > 0");
  require(p.yaw_inertia > 0.0, "yaw_inertia must be > 0");
  require(p.lf > 0.0, "lf must be > 0");
  require(p.lr > 0.0, "lr must be > 0");
  require(p.track_front > 0.0, "track_front must be > 0");
  require(p.track_rear > 0.0, "track_rear must be > 0");
  require(p.h_cg > 0.0, "h_cg must be > 0");
  require(p.wheel_radius > 0.0, "wheel_radius must be > 0");
  require(p.wheel_inertia > 0.0, "wheel_inertia must be > 0");
  require(p.mu >= 0.05 && p.mu <= 2.0, "mu must be in [0.05, 2.0]");
  require(p.rho_air > 0.0, "rho_air must be > 0");
  require(p.drag_area >= 0.0, "drag_area must be >= 0");
  require(p.roll_resistance >= 0.0, "roll_resistance must be >= 0");
  require(p.gravity > 0.0, "gravity must be > 0");
  validate_mf(p.front_long, "front_long");
  validate_mf(p.front_lat, "front_lat");
  validate_mf(p.rear_long, "rear_long");
  validate_mf(p.rear_lat, "rear_lat");
  require(p.steer_max > 0.0, "steer_max must be > 0");
  require(p.torque_max > 0.0, "torque_max must be > 0");
  require(p.v_eps > 0.0, "v_eps must be > 0");
}

VehicleParams default_params()
{
  VehicleParams p;  // struct defaults are the reference set
  validate_params(p);
  return p;
}

double magic_formula(double slip, double Fz, double mu, const MagicFormulaCoeffs & c)
{
  const double bs = c.B * slip;
  return mu * Fz * c.D * std::sin(c.C * std::atan(bs - c.E * (bs - std::atan(bs))));
}

TireState slip_quantities(const VehicleState & x, const VehicleInput & u,
                          const VehicleParams & p)
{
  const WheelLayout geom = wheel_layout(p);
  const double r = x.yaw_rate();

  TireState out{};
  for (int i = 0; i < kNumWheels; ++i) {
    const double delta = i < kRL ? u.steer() : 0.0;
    // Contact point velocity in the body frame.
    const double vcx = x.vx() - r * geom.y[i];
    const double vcy = x.vy() + r * geom.x[i];
    // Rolling direction velocity in the wheel frame.
    const double vwx = std::cos(delta) * vcx + std::sin(delta) * vcy;

    out[i].kappa = (x.omega(i) * p.wheel_radius - vwx) / std::max(std::abs(vwx), p.v_eps);
    out[i].alpha = delta - std::atan2(vcy, std::max(std::abs(vcx), p.v_eps));
  }
  return out;
}

std::array<double, 4> vertical_loads(const VehicleParams & p, double ax, double ay)
{
  const double L = p.wheelbase();
  const double weight = p.mass * p.gravity;

  // Static split plus longitudinal transfer between the axles.
  const double front_axle = p.mass * (p.gravity * p.lr - ax * p.h_cg) / L;
  const double rear_axle = p.mass * (p.gravity * p.lf + ax * p.h_cg) / L;

  // Lateral transfer, half of the total roll moment per axle; positive ay
  // (left turn) loads the right-hand side.
  const double d_front = p.mass * ay * p.h_cg / (2.0 * p.track_front);
  const double d_rear = p.mass * ay * p.h_cg / (2.0 * p.track_rear);

  std::array<double, 4> Fz = {
    0.5 * front_axle - d_front, 0.5 * front_axle + d_front,
    0.5 * rear_axle - d_rear, 0.5 * rear_axle + d_rear};

  double sum = 0.0;
  for (double & f : Fz) {
    f = std::max(f, 0.0);
    sum += f;
  }
  // Flooring can break the vertical force balance; rescale so sum == m*g.
  if (sum > 0.0) {
    const double k = weight / sum;
    for (double & f : Fz) {
      f *= k;
    }
  }
  return Fz;
}

Eigen::Matrix<double, VehicleState::kSize, 1> vehicle_dynamics(
  const VehicleState & x, const VehicleInput & u, const VehicleParams & p,
  const AccelHint & hint, DynamicsDebug * debug)
{
  VehicleInput uc = u;
  bool clamped = false;
  const double steer_clamped = std::clamp(u.steer(), -p.steer_max, p.steer_max);
  clamped |= steer_clamped != u.steer();
  uc.steer() = steer_clamped;
  for (int i = 0; i < kNumWheels; ++i) {
    const double t = std::clamp(u.torque(i), -p.torque_max, p.torque_max);
    clamped |= t != u.torque(i);
    uc.torque(i) = t;
  }

  const WheelLayout geom = wheel_layout(p);
  TireState tires = slip_quantities(x, uc, p);
  const std::array<double, 4> Fz = vertical_loads(p, hint.ax, hint.ay);

  double sum_fx = 0.0;
  double sum_fy = 0.0;
  double yaw_moment = 0.0;
  for (int i = 0; i < kNumWheels; ++i) {
    tires[i].Fz = Fz[i];
    const MagicFormulaCoeffs & cl = long_coeffs(p, i);
    const MagicFormulaCoeffs & cs = lat_coeffs(p, i);
    double fx = magic_formula(tires[i].kappa, Fz[i], p.mu, cl);
    double fy = magic_formula(tires[i].alpha, Fz[i], p.mu, cs);

    // Friction ellipse with semi-axes mu*Fz*D_long / mu*Fz*D_lat: rescale the
    // independently computed pure-slip forces onto/inside the ellipse.
    const double a = p.mu * Fz[i] * cl.D;
    const double b = p.mu * Fz[i] * cs.D;
    if (a > 1e-9 && b > 1e-9) {
      const double q = std::sqrt((fx / a) * (fx / a) + (fy / b) * (fy / b));
      if (q > 1.0) {
        fx /= q;
        fy /= q;
      }
    } else {
      fx = 0.0;
      fy = 0.0;
    }
    tires[i].Fx = fx;
    tires[i].Fy = fy;

    const double delta = i < kRL ? uc.steer() : 0.0;
    const double fbx = std::cos(delta) * fx - std::sin(delta) * fy;
    const double fby = std::sin(delta) * fx + std::cos(delta) * fy;
    sum_fx += fbx;
    sum_fy += fby;
    yaw_moment += geom.x[i] * fby - geom.y[i] * fbx;
  }

  const double drag = 0.5 * p.rho_air * p.drag_area * x.vx() * std::abs(x.vx());
  const double roll = p.roll_resistance * p.mass * p.gravity * smooth_sign(x.vx(), p.v_eps);

  Eigen::Matrix<double, VehicleState::kSize, 1> xdot;
  const double cp = std::cos(x.psi());
  const double sp = std::sin(x.psi());
  xdot[VehicleState::kX] = x.vx() * cp - x.vy() * sp;
  xdot[VehicleState::kY] = x.vx() * sp + x.vy() * cp;
  xdot[VehicleState::kPsi] = x.yaw_rate();
  xdot[VehicleState::kVx] = (sum_fx - drag - roll) / p.mass + x.yaw_rate() * x.vy();
  xdot[VehicleState::kVy] = sum_fy / p.mass - x.yaw_rate() * x.vx();
  xdot[VehicleState::kYawRate] = yaw_moment / p.yaw_inertia;
  for (int i = 0; i < kNumWheels; ++i) {
    xdot[VehicleState::kOmegaFL + i] =
      (uc.torque(i) - tires[i].Fx * p.wheel_radius) / p.wheel_inertia;
  }

  if (!xdot.allFinite()) {
    throw NonFiniteState("vehicle_dynamics produced a non-finite derivative");
  }

  if (debug) {
    debug->tires = tires;
    debug->realized = accel_from_derivative(x, xdot);
    debug->input_clamped = clamped;
  }
  return xdot;
}

AccelHint accel_from_derivative(const VehicleState & x,
                                const Eigen::Matrix<double, VehicleState::kSize, 1> & xdot)
{
  return AccelHint{
    xdot[VehicleState::kVx] - x.yaw_rate() * x.vy(),
    xdot[VehicleState::kVy] + x.yaw_rate() * x.vx()};
}

PlantStepResult plant_step(const VehicleState & x, const VehicleInput & u,
                           const VehicleParams & p, const AccelHint & hint, double dt)
{
  const auto f = [&](const VehicleState & xs) {
    return vehicle_dynamics(xs, u, p, hint, nullptr);
  };

  VehicleState s;
  const auto k1 = f(x);
  s.raw = x.raw + 0.5 * dt * k1;
  const auto k2 = f(s);
  s.raw = x.raw + 0.5 * dt * k2;
  const auto k3 = f(s);
  s.raw = x.raw + dt * k3;
  const auto k4 = f(s);

  PlantStepResult out;
  out.state.raw = x.raw + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!out.state.raw.allFinite()) {
    throw NonFiniteState("plant_step produced a non-finite state");
  }

  // Refresh the load-transfer hint from the derivative at the accepted state.
  DynamicsDebug dbg;
  vehicle_dynamics(out.state, u, p, hint, &dbg);
  out.hint = dbg.realized;
  out.tires = dbg.tires;
  return out;
}

RecordedTrajectory simulate_plant(const VehicleState & x0,
                                  const std::vector<VehicleInput> & inputs,
                                  const VehicleParams & p, const TimeGrid & grid)
{
  if (static_cast<std::int64_t>(inputs.size()) != grid.n_steps) {
    throw ValidationError("simulate_plant: inputs.size() must equal grid.n_steps");
  }

  RecordedTrajectory traj;
  traj.grid = grid;
  traj.states.reserve(static_cast<std::size_t>(grid.n_steps) + 1);
  traj.inputs = inputs;
  traj.hints.reserve(static_cast<std::size_t>(grid.n_steps));
  traj.states.push_back(x0);

  AccelHint hint{};  // static loads at t = 0
  for (std::int64_t j = 0; j < grid.n_steps; ++j) {
    traj.hints.push_back(hint);
    try {
      PlantStepResult r =
        plant_step(traj.states.back(), inputs[static_cast<std::size_t>(j)], p, hint, grid.dt);
      traj.states.push_back(r.state);
      hint = r.hint;
    } catch (const NonFiniteState &) {
      throw NonFiniteState("plant integration diverged", j);
    }
  }
  return traj;
}

}  // namespace oddsens
