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

// Path decomposition of collaborative tasks on non-communicating pairs.
//
// Every conjunct on an edge missing from the communication graph is replaced
// by one parametric box sub-task per edge of a shortest communication path.
// The boxes are sized by a volume-maximizing convex program whose rows keep
// the Minkowski sum of the boxes inside the original predicate's superlevel
// set and keep the rewritten conjunction free of conflicting patterns.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stldecomp/conflict.hpp"
#include "stldecomp/graph.hpp"
#include "stldecomp/problem.hpp"
#include "stldecomp/solver.hpp"
#include "stldecomp/stl.hpp"

namespace stldecomp {

/// Instant t̄ in [a, b] at which the sub-tasks of an Eventually task must hold.
enum class TbarPolicy { kMidpoint, kStart, kEnd };

std::string to_string(TbarPolicy policy);
/// Parses "midpoint", "start" or "end"; InputError otherwise.
TbarPolicy parse_tbar_policy(const std::string& text);
double apply_tbar_policy(TbarPolicy policy, const Interval& interval);

struct DecomposeOptions {
  double nu_min = 1e-3;
  double tol = 1e-6;
  int max_cycle_len = 6;
  TbarPolicy tbar_policy = TbarPolicy::kMidpoint;
  std::size_t max_combinations = 10000;
  int vertex_budget = kDefaultVertexBudget;
  solver::SolverParams solver;
  /// Per-task t̄ keyed by task name; must lie inside the task interval.
  std::map<std::string, double> tbar_overrides;
};

/// Throws InputError on a non-positive nu_min / tol or max_cycle_len < 3.
void validate(const DecomposeOptions& options);

/// One sub-task on a directed edge (r, s) of a decomposition path.
struct ParametricTask {
  std::size_t family = 0;
  Edge edge;
  TemporalOp op = TemporalOp::kAlways;
  Interval interval;  // [a, b] for Always, [t̄, t̄] for Eventually
  std::size_t block = 0;
  std::optional<HyperRect> solved;
};

/// Sub-tasks of one path for an Always/Eventually task on (i, j). Intervals
/// follow the path's shared timing: Always keeps [a, b], Eventually pins
/// every sub-task to [tbar, tbar]. Blocks are numbered from `first_block`.
/// The path may run either way between the two agents of the subject; the
/// sub-tasks follow the path direction. Throws InputError otherwise.
std::vector<ParametricTask> build_subtasks(const AtomicTask& task, const Path& path, double tbar,
                                           std::size_t family = 0, std::size_t first_block = 0);

/// One decomposed conjunct and the path it was spread over.
struct DecomposedConjunct {
  Edge task_edge;               // canonical key in GlobalSpec::collaborative
  std::size_t conjunct = 0;     // index inside that formula
  AtomicTask origin;            // oriented along the path (source -> target)
  std::string label;
  Path path;
  std::vector<ParametricTask> subtasks;
};

/// Deterministic intermediate state before any solving.
struct DecompositionPlan {
  int dimension = 0;
  UndirectedGraph task_graph;
  UndirectedGraph rewritten_graph;
  /// Keyed by the canonical task edge, oriented like the formula subject.
  std::map<Edge, Path> paths;
  std::vector<DecomposedConjunct> families;
  ParameterSet parameters;
  BundleMap bundles;
  Eigen::VectorXd initial_point;
};

/// Shortest paths, sub-tasks, parameter blocks and edge bundles for `spec`.
/// Throws InputError when gc is disconnected or spec references agents
/// outside gc.
DecompositionPlan plan_decomposition(const GlobalSpec& spec, const UndirectedGraph& gc,
                                     const DecomposeOptions& options = {});

/// Objective over every block, one vertex-inclusion constraint per family,
/// nu >= nu_min bounds, then `conflict_constraints` appended verbatim.
ConvexProblem assemble_problem(const DecompositionPlan& plan,
                               const std::vector<Constraint>& conflict_constraints,
                               const DecomposeOptions& options = {});

struct DecompositionResult {
  GlobalSpec rewritten;
  UndirectedGraph task_graph;
  UndirectedGraph rewritten_graph;
  std::vector<DecomposedConjunct> families;  // subtasks carry solved boxes
  ConvexProblem problem;
  solver::Solution solution;
  ResolutionCensus census;
  std::vector<Cycle> cycles;
  std::vector<double> inclusion_margins;  // per family, geometric
  std::vector<double> constraint_margins;  // per constraint of `problem`
  BundleMap bundles;

  bool ok() const {
    return solution.status == solver::Status::kOptimal ||
           solution.status == solver::Status::kFeasible;
  }
};

/// Full pipeline. Throws InfeasibleError (with the phase-I certificate) when
/// the program has no strictly feasible point and ConflictError when two
/// inherited tasks conflict. Other solver outcomes are returned in
/// `solution.status`.
DecompositionResult decompose(const GlobalSpec& spec, const UndirectedGraph& gc,
                              const DecomposeOptions& options = {});

/// Aggregate box (Minkowski sum along the path) of a solved family.
HyperRect aggregate_rect(const DecomposedConjunct& family);

}  // namespace stldecomp
