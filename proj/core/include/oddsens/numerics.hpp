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

#ifndef ODDSENS_NUMERICS_HPP_
#define ODDSENS_NUMERICS_HPP_

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <vector>

#include "oddsens/errors.hpp"

namespace oddsens
{

/// Uniform time axis: samples at t0 + j*dt for j = 0..n_steps.
struct TimeGrid
{
  double t0 = 0.0;
  double dt = 1e-3;
  std::int64_t n_steps = 0;

  double time(std::int64_t j) const { return t0 + dt * static_cast<double>(j); }
  std::int64_t n_samples() const { return n_steps + 1; }
  double duration() const { return dt * static_cast<double>(n_steps); }
};

using StateVector = Eigen::VectorXd;
using JacobianMatrix = Eigen::MatrixXd;

/// Right-hand side of an autonomous-in-input ODE, xdot = rhs(t, x).
using OdeRhs = std::function<StateVector(double, const StateVector &)>;
/// Right-hand side with an explicit input channel, xdot = rhs(t, x, u).
using ControlledRhs =
  std::function<StateVector(double, const StateVector &, const Eigen::VectorXd &)>;
/// Input signal sampled at the start of each integration step (zero-order hold).
using InputLookup = std::function<Eigen::VectorXd(double)>;

/// Relative step used by all finite-difference derivatives in this kernel.
inline constexpr double kFdRelStep = 1e-6;

/// One classical 4th-order Runge-Kutta update.
/// Throws NonFiniteState if the updated state contains NaN/Inf.
StateVector rk4_step(const OdeRhs & rhs, const StateVector & x, double t, double dt);

/// Fixed-step RK4 over the whole grid; returns n_steps+1 states starting at x0.
/// NonFiniteState raised by any step is rethrown with the step index attached.
std::vector<StateVector> integrate(const OdeRhs & rhs, const StateVector & x0,
                                   const TimeGrid & grid);

/// Same, with the input looked up once per step and held across the RK4 stages.
std::vector<StateVector> integrate(const ControlledRhs & rhs, const StateVector & x0,
                                   const TimeGrid & grid, const InputLookup & input);

/// Central-difference Jacobian of f at x. Column j uses the step
/// h_j = kFdRelStep * max(|x_j|, scale_j); scale keeps steps meaningful for
/// near-zero states and defaults to all-ones.
JacobianMatrix jacobian_fd(const std::function<StateVector(const StateVector &)> & f,
                           const StateVector & x, const StateVector & scale);
JacobianMatrix jacobian_fd(const std::function<StateVector(const StateVector &)> & f,
                           const StateVector & x);

/// Central-difference derivative of a vector-valued function of one scalar
/// parameter, step h = kFdRelStep * max(|p|, p_scale).
Eigen::VectorXd param_grad_fd(const std::function<StateVector(double)> & f, double p,
                              double p_scale = 1.0);

}  // namespace oddsens

#endif  // ODDSENS_NUMERICS_HPP_
