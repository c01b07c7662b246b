// Copyright 2026 The stldecomp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace stldecomp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad dimensions, unknown agents, short
/// trajectories, disconnected communication graphs.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The decomposition program (or a keyframe placement) has no strictly
/// feasible point. `certificate()` holds the minimized max-violation found by
/// phase I, when one is available.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what, double certificate = 0.0)
      : Error(what), certificate_(certificate) {}
  double certificate() const { return certificate_; }

 private:
  double certificate_;
};

/// Two inherited (non-parametric) tasks conflict with each other. No
/// constraint on the decomposition parameters can repair this.
class ConflictError : public InfeasibleError {
 public:
  explicit ConflictError(const std::string& what) : InfeasibleError(what) {}
};

namespace detail {
[[noreturn]] void throw_input(const std::string& what);
}  // namespace detail

}  // namespace stldecomp
