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

// STL fragment: conjunctions of F_[a,b] / G_[a,b] over concave predicates of
// an agent state or a relative state, and a sampled robustness monitor.

#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "stldecomp/predicate.hpp"

namespace stldecomp {

using AgentId = int;  // 1-based

/// An ordered agent pair. As a task subject (i, j) refers to e_ij = x_j - x_i.
struct Edge {
  AgentId from = 0;
  AgentId to = 0;

  Edge reversed() const { return {to, from}; }
  Edge canonical() const { return from < to ? *this : reversed(); }
  bool is_canonical() const { return from < to; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

std::string to_string(const Edge& e);

enum class TemporalOp { kAlways, kEventually };

std::string to_string(TemporalOp op);

struct Interval {
  double start = 0.0;
  double end = 0.0;

  double length() const { return end - start; }
  bool contains(double t) const { return start <= t && t <= end; }
  bool contains(const Interval& other) const {
    return start <= other.start && other.end <= end;
  }
  bool overlaps(const Interval& other) const {
    return std::max(start, other.start) <= std::min(end, other.end);
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Either a single agent (absolute state) or an ordered pair (relative state).
class Subject {
 public:
  static Subject single(AgentId agent) { return Subject(agent, 0); }
  static Subject pair(AgentId i, AgentId j) { return Subject(i, j); }

  bool is_pair() const { return second_ != 0; }
  AgentId agent() const { return first_; }
  Edge edge() const { return {first_, second_}; }

  friend bool operator==(const Subject&, const Subject&) = default;

 private:
  Subject(AgentId a, AgentId b) : first_(a), second_(b) {}
  AgentId first_;
  AgentId second_;
};

struct AtomicTask {
  TemporalOp op = TemporalOp::kAlways;
  Interval interval;
  Subject subject = Subject::single(1);
  PredicateFunction predicate;
  std::string name = {};

  /// The same task expressed on `edge`, which must be subject.edge() or its
  /// reverse; reversing negates the predicate.
  AtomicTask oriented(const Edge& edge) const;
};

/// Throws InputError unless 0 <= a <= b and pair subjects have i != j.
void validate(const AtomicTask& task);

/// Non-empty conjunction of atomic tasks sharing one subject.
class TaskFormula {
 public:
  explicit TaskFormula(std::vector<AtomicTask> conjuncts);

  const std::vector<AtomicTask>& conjuncts() const { return conjuncts_; }
  const Subject& subject() const { return conjuncts_.front().subject; }
  std::size_t size() const { return conjuncts_.size(); }

  /// Appends a conjunct, re-orienting a reversed pair subject.
  void add(const AtomicTask& task);

 private:
  std::vector<AtomicTask> conjuncts_;
};

/// Independent tasks per agent and collaborative tasks per unordered edge.
///
/// Collaborative formulas are keyed by the canonical edge (i < j); the formula
/// itself keeps the orientation of the first task added for that edge.
struct GlobalSpec {
  int num_agents = 0;
  int dimension = 0;
  std::map<AgentId, TaskFormula> independent;
  std::map<Edge, TaskFormula> collaborative;

  void add(const AtomicTask& task);
  std::size_t task_count() const;
  /// Latest interval end over every conjunct; 0 for an empty spec.
  double horizon() const;
};

/// Sampled joint trajectory. states[i-1] holds agent i as a (samples x n)
/// matrix aligned with `times`.
class Trajectory {
 public:
  Trajectory(std::vector<double> times, std::vector<Eigen::MatrixXd> states);

  const std::vector<double>& times() const { return times_; }
  int num_agents() const { return static_cast<int>(states_.size()); }
  Eigen::Index dimension() const;
  std::size_t num_samples() const { return times_.size(); }

  /// State of `agent` at sample k.
  Vec state(AgentId agent, std::size_t k) const;
  const Eigen::MatrixXd& states(AgentId agent) const;

 private:
  std::vector<double> times_;
  std::vector<Eigen::MatrixXd> states_;
};

/// e_ij(t_k) = x_j(t_k) - x_i(t_k), one row per sample.
Eigen::MatrixXd relative_signal(const Trajectory& traj, AgentId i, AgentId j);

/// Sample indices whose time lies in [lo, hi] up to a 1e-9 relative snap.
/// Throws InputError when hi runs past the trajectory or no sample falls in
/// the window.
std::vector<std::size_t> window_samples(const Trajectory& traj, double lo, double hi);

/// Signed robustness over the trajectory's own sample grid. Always takes the
/// min of h over the window, Eventually the max; conjunctions take the min.
double robustness(const AtomicTask& task, const Trajectory& traj, double t0 = 0.0);
double robustness(const TaskFormula& formula, const Trajectory& traj, double t0 = 0.0);
double robustness(const GlobalSpec& spec, const Trajectory& traj, double t0 = 0.0);

}  // namespace stldecomp
