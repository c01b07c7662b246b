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

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "stldecomp/decomposer.hpp"
#include "stldecomp/stl.hpp"

namespace stldecomp {

struct SynthesisOptions {
  double dt = 0.1;
  /// Anchor of the component holding agent 1; other components anchor at
  /// their lowest agent. 0 means the lowest index overall.
  AgentId anchor = 0;
  /// Per-agent speed bound checked between keyframes.
  double max_speed = std::numeric_limits<double>::infinity();
  /// The trajectory runs to at least this time.
  double horizon = 0.0;
};

/// Piecewise-linear joint trajectory satisfying `spec` on the uniform dt grid
/// merged with every task keyframe. Each keyframe places agents by weighted
/// least squares towards region centers and falls back to a max-margin
/// solve when that leaves some region. Throws InfeasibleError naming the
/// task when a keyframe cannot be placed, or when the finished trajectory
/// does not reach positive robustness; InputError on an unreachable keyframe.
Trajectory synthesize_trajectory(const GlobalSpec& spec, const SynthesisOptions& options = {});

/// Convenience overload on the rewritten specification. The horizon is
/// extended to the original task windows so that both specifications can be
/// monitored on the result.
Trajectory synthesize_trajectory(const DecompositionResult& result,
                                 const SynthesisOptions& options = {});

enum class Verdict { kHolds, kVacuous, kViolated };

std::string to_string(Verdict verdict);

struct TaskRobustness {
  std::string which;  // "original" or "rewritten"
  std::string label;
  double value = 0.0;
};

struct ImplicationReport {
  double rewritten = 0.0;  // robustness of the rewritten specification
  double original = 0.0;
  std::vector<TaskRobustness> breakdown;
  Verdict verdict = Verdict::kVacuous;
};

/// Robustness of both specifications on the trajectory's grid. `violated`
/// means the rewritten spec holds while the original does not.
ImplicationReport verify_implication(const Trajectory& traj, const GlobalSpec& rewritten,
                                     const GlobalSpec& original);

/// Per-conjunct robustness, labeled by task name or by subject.
std::vector<TaskRobustness> robustness_breakdown(const GlobalSpec& spec, const Trajectory& traj,
                                                 const std::string& which);

/// Header `t,x1_1..x1_n,...,xN_1..xN_n`, 17 significant digits, C locale.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
/// Throws InputError with a line number on malformed input.
Trajectory read_trajectory_csv(std::istream& in);

}  // namespace stldecomp
