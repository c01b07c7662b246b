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

// Scenario files, parameter files and decomposition reports. All three are
// YAML documents carrying a `schema:` version string; see
// docs/scenario_format.md.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stldecomp/decomposer.hpp"

namespace stldecomp {

inline constexpr const char* kScenarioSchema = "stldecomp-scenario/1";
inline constexpr const char* kParamsSchema = "stldecomp-params/1";
inline constexpr const char* kReportSchema = "stldecomp-report/1";

struct ScenarioTask {
  AtomicTask task;
  std::optional<double> tbar;

  friend bool operator==(const ScenarioTask&, const ScenarioTask&);
};

struct ScenarioOptions {
  double nu_min = 1e-3;
  double tol = 1e-6;
  int max_cycle_len = 6;
  TbarPolicy tbar_policy = TbarPolicy::kMidpoint;

  friend bool operator==(const ScenarioOptions&, const ScenarioOptions&) = default;
};

struct Scenario {
  int num_agents = 0;
  int dimension = 0;
  std::vector<Edge> communication;
  std::vector<ScenarioTask> tasks;
  ScenarioOptions options;

  GlobalSpec spec() const;
  UndirectedGraph communication_graph() const;
  /// Scenario options plus per-task t̄ overrides.
  DecomposeOptions decompose_options() const;

  friend bool operator==(const Scenario&, const Scenario&);
};

/// Parses and validates a scenario. Syntax errors carry line and column;
/// semantic errors carry the field path, e.g. `tasks[3].interval`.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
std::string render_scenario(const Scenario& scenario);

/// Externally supplied box parameters, one entry per decomposition path.
struct PathParams {
  std::vector<AgentId> path;
  std::size_t conjunct = 0;
  struct EdgeBox {
    Edge edge;
    Vec center;
    Vec size;
  };
  std::vector<EdgeBox> edges;
};

/// Reads a params document, or the `paths` section of a report.
std::vector<PathParams> parse_params(const std::string& text);
std::vector<PathParams> load_params(const std::string& path);

struct ConstraintCheck {
  std::string label;
  ConstraintKind kind = ConstraintKind::kInclusion;
  double margin = 0.0;
};

struct ParamsCheck {
  std::vector<ConstraintCheck> evaluated;
  std::size_t skipped = 0;        // constraints touching unsupplied blocks
  std::vector<std::string> unmatched;  // params entries matching no family
  double min_margin = 0.0;
  bool passed = false;
};

/// Evaluates every constraint of the decomposition program whose variables
/// are all supplied by `params`. Entries are matched to families by node
/// sequence; a reversed sequence is read with negated centers.
ParamsCheck check_params(const Scenario& scenario, const std::vector<PathParams>& params,
                         double tol);

/// Machine-readable report (17 significant digits, no timings) and the
/// human table (2 decimals).
std::string render_report(const DecompositionResult& result);
std::string render_table(const DecompositionResult& result);

}  // namespace stldecomp
