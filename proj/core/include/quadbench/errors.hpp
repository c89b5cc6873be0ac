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

#ifndef QUADBENCH_ERRORS_HPP_
#define QUADBENCH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace quadbench {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inverse kinematics target outside the leg workspace.
class Unreachable : public Error {
 public:
  Unreachable(double distance, double max_reach);
  double distance() const { return distance_; }
  double max_reach() const { return max_reach_; }

 private:
  double distance_;
  double max_reach_;
};

// A leg command payload does not match the active control mode.
class CommandModeMismatch : public Error {
 public:
  using Error::Error;
};

// Gait targets left the leg workspace (bad gait parameters).
class TargetUnreachable : public Error {
 public:
  using Error::Error;
};

// Simulator state left the sanity bounds (unstable gains or step size).
class NumericalDivergence : public Error {
 public:
  using Error::Error;
};

// Benchmark trial did not start from rest.
class NotStartedAtRest : public Error {
 public:
  using Error::Error;
};

// Benchmark trial never reached its finish condition.
class Dnf : public Error {
 public:
  using Error::Error;
};

class InsufficientDisplacement : public Error {
 public:
  using Error::Error;
};

// Caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration or document; the message names the offending key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed trial log; carries the 1-based line number.
class LogParseError : public Error {
 public:
  LogParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace quadbench

#endif  // QUADBENCH_ERRORS_HPP_
