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

#include "oddsens/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace oddsens
{

namespace
{

bool all_finite(const Eigen::Ref<const Eigen::VectorXd> & v)
{
  return v.allFinite();
}

}  // namespace

StateVector rk4_step(const OdeRhs & rhs, const StateVector & x, double t, double dt)
{
  const StateVector k1 = rhs(t, x);
  const StateVector k2 = rhs(t + 0.5 * dt, x + 0.5 * dt * k1);
  const StateVector k3 = rhs(t + 0.5 * dt, x + 0.5 * dt * k2);
  const StateVector k4 = rhs(t + dt, x + dt * k3);

  StateVector out = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!all_finite(out)) {
    throw NonFiniteState("rk4_step produced a non-finite state");
  }
  return out;
}

std::vector<StateVector> integrate(const OdeRhs & rhs, const StateVector & x0,
                                   const TimeGrid & grid)
{
  if (!all_finite(x0)) {
    throw NonFiniteState("integrate called with non-finite initial state");
  }
  std::vector<StateVector> out;
  out.reserve(static_cast<std::size_t>(grid.n_steps) + 1);
  out.push_back(x0);
  for (std::int64_t j = 0; j < grid.n_steps; ++j) {
    try {
      out.push_back(rk4_step(rhs, out.back(), grid.time(j), grid.dt));
    } catch (const NonFiniteState & e) {
      throw NonFiniteState("integrate failed", j);
    }
  }
  return out;
}

std::vector<StateVector> integrate(const ControlledRhs & rhs, const StateVector & x0,
                                   const TimeGrid & grid, const InputLookup & input)
{
  // Hold u constant across each step; the held value is sampled at the step start.
  OdeRhs bound;
  Eigen::VectorXd u_held;
  if (!all_finite(x0)) {
    throw NonFiniteState("integrate called with non-finite initial state");
  }
  std::vector<StateVector> out;
  out.reserve(static_cast<std::size_t>(grid.n_steps) + 1);
  out.push_back(x0);
  for (std::int64_t j = 0; j < grid.n_steps; ++j) {
    u_held = input(grid.time(j));
    const auto step_rhs = [&](double t, const StateVector & x) { return rhs(t, x, u_held); };
    try {
      out.push_back(rk4_step(step_rhs, out.back(), grid.time(j), grid.dt));
    } catch (const NonFiniteState & e) {
      throw NonFiniteState("integrate failed", j);
    }
  }
  return out;
}

JacobianMatrix jacobian_fd(const std::function<StateVector(const StateVector &)> & f,
                           const StateVector & x, const StateVector & scale)
{
  const Eigen::Index n = x.size();
  const StateVector f0 = f(x);
  const Eigen::Index m = f0.size();

  JacobianMatrix jac(m, n);
  StateVector xp = x;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double s = j < scale.size() ? scale[j] : 1.0;
    const double h = kFdRelStep * std::max(std::abs(x[j]), s);
    xp[j] = x[j] + h;
    const StateVector fp = f(xp);
    xp[j] = x[j] - h;
    const StateVector fm = f(xp);
    xp[j] = x[j];
    if (!all_finite(fp) || !all_finite(fm)) {
      throw NonFiniteState("jacobian_fd perturbed evaluation is non-finite");
    }
    jac.col(j) = (fp - fm) / (2.0 * h);
  }
  return jac;
}

JacobianMatrix jacobian_fd(const std::function<StateVector(const StateVector &)> & f,
                           const StateVector & x)
{
  return jacobian_fd(f, x, StateVector::Ones(x.size()));
}

Eigen::VectorXd param_grad_fd(const std::function<StateVector(double)> & f, double p,
                              double p_scale)
{
  const double h = kFdRelStep * std::max(std::abs(p), p_scale);
  const StateVector fp = f(p + h);
  const StateVector fm = f(p - h);
  if (!all_finite(fp) || !all_finite(fm)) {
    throw NonFiniteState("param_grad_fd perturbed evaluation is non-finite");
  }
  return (fp - fm) / (2.0 * h);
}

}  // namespace oddsens
