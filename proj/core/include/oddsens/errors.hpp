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

#ifndef ODDSENS_ERRORS_HPP_
#define ODDSENS_ERRORS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace oddsens
{

/// A state, derivative or perturbed evaluation produced NaN/Inf.
/// Carries the integration step index when raised inside a stepper (-1 otherwise).
class NonFiniteState : public std::runtime_error
{
public:
  explicit NonFiniteState(const std::string & what, std::int64_t step = -1)
  : std::runtime_error(step >= 0 ? what + " (step " + std::to_string(step) + ")" : what),
    step_(step)
  {
  }
  std::int64_t step() const noexcept { return step_; }

private:
  std::int64_t step_;
};

/// Input data (scenario file, maneuver spec, parameter set) violates a documented range.
class ValidationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Structured text input could not be parsed or lacks a required section.
class ParseError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// An optimization problem has no solution under its constraints.
class Infeasible : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver ran out of iterations before reaching its tolerances.
class NoConvergence : public std::runtime_error
{
public:
  NoConvergence(const std::string & what, int iterations, double residual)
  : std::runtime_error(
      what + " (iterations=" + std::to_string(iterations) +
      ", residual=" + std::to_string(residual) + ")"),
    iterations_(iterations),
    residual_(residual)
  {
  }
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

private:
  int iterations_;
  double residual_;
};

/// Filesystem failure; message includes the offending path.
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace oddsens

#endif  // ODDSENS_ERRORS_HPP_
