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

// Conflicting conjunctions on the rewritten task graph.
//
// Four sufficient patterns make a conjunction unsatisfiable:
//   type 1  two Always tasks on one edge, overlapping windows, disjoint regions;
//   type 2  an Eventually window inside an Always window, disjoint regions;
//   type 3  Always tasks around a cycle with a common instant whose regions
//           cannot close the cycle (0 is not in the Minkowski sum);
//   type 4  the Eventually/Always mix of type 3 under the timing premises of
//           a single Eventually window inside the Always windows, or of
//           Eventually point windows sharing one instant.
// Resolution emits affine box-in-box rows on the parametric regions so that
// none of the patterns can arise in the solved decomposition.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stldecomp/graph.hpp"
#include "stldecomp/problem.hpp"

namespace stldecomp {

/// One conjunct on an edge of the rewritten task graph. Its region is either
/// a fixed predicate (inherited task) or a parametric box expression
/// (decomposed sub-task), both read over e_ij of the bundle's canonical edge.
struct BundleConjunct {
  std::size_t id = 0;  // global order; ties in resolution go to the smaller id
  std::string label;
  TemporalOp op = TemporalOp::kAlways;
  Interval interval;
  std::optional<PredicateFunction> fixed;
  /// Under-approximating box of a bounded fixed region.
  std::optional<HyperRect> inscribed;
  std::optional<RectExpr> parametric;

  bool is_parametric() const { return parametric.has_value(); }
};

struct EdgeTaskBundle {
  Edge edge;  // canonical
  std::vector<BundleConjunct> conjuncts;

  std::vector<std::size_t> always_indices() const;
  std::vector<std::size_t> eventually_indices() const;
};

using BundleMap = std::map<Edge, EdgeTaskBundle>;

enum class ConflictType { kType1 = 1, kType2 = 2, kType3 = 3, kType4 = 4 };

std::string to_string(ConflictType type);

struct ConflictRecord {
  ConflictType type = ConflictType::kType1;
  Edge edge;                          // edge types
  std::optional<Cycle> cycle;         // cycle types
  std::vector<std::size_t> conjuncts;  // conjunct ids (pair or combination tuple)
  std::vector<Interval> intervals;
  int split = 0;              // p, cycle types only
  int eventually_count = 0;   // q, type 4 only
};

/// Solved parameter values used to make parametric regions concrete.
struct RegionValues {
  const ParameterSet* parameters = nullptr;
  const Eigen::VectorXd* values = nullptr;
};

struct ConflictOptions {
  int max_cycle_len = 6;
  std::size_t max_combinations = 10000;
};

/// Type 1 / type 2 patterns between pairs of conjuncts on one edge. Pairs that
/// involve a parametric conjunct are only examined when `values` is given.
std::vector<ConflictRecord> detect_edge_conflicts(const EdgeTaskBundle& bundle,
                                                  const std::optional<RegionValues>& values = {});

/// Conjunct index (within each bundle) chosen for every edge of a cycle.
using Combination = std::vector<std::size_t>;

/// Type 3 / type 4 patterns for one combination on a cycle. Regions are read
/// along the cycle direction and tested exactly: the pattern fires when 0 is
/// not in the Minkowski sum of the chosen regions, which is the same as the
/// left part of any split missing the reflected right part.
std::vector<ConflictRecord> detect_cycle_conflicts(const Cycle& cycle, const BundleMap& bundles,
                                                   const Combination& combination,
                                                   const std::optional<RegionValues>& values = {});

/// Size of the Cartesian product of the per-edge conjunct lists.
std::size_t combination_count(const Cycle& cycle, const BundleMap& bundles);

/// Calls `visit` for every combination meeting the type 3 or type 4 timing
/// premises. Throws InputError naming the cycle when the product exceeds
/// options.max_combinations.
void for_each_combination(const Cycle& cycle, const BundleMap& bundles,
                          const ConflictOptions& options,
                          const std::function<void(const Combination&)>& visit);

/// Premise-filtered combinations, materialized.
std::vector<Combination> combination_tuples(const Cycle& cycle, const BundleMap& bundles,
                                            const ConflictOptions& options = {});

/// Split index p in [1, l-2] for a cycle with l-1 edges. Maximizes the share
/// of parametric regions among the first p edges; ties go to the p closest to
/// floor((l-1)/2), then to the smaller p.
int choose_split(const std::vector<bool>& parametric);

struct ResolutionCensus {
  std::size_t type1 = 0;
  std::size_t type2 = 0;
  std::size_t type3 = 0;
  std::size_t type4 = 0;
  std::size_t cycles_checked = 0;
  std::size_t combinations_checked = 0;
  int max_cycle_len = 0;
};

struct Resolution {
  std::vector<Constraint> constraints;
  ResolutionCensus census;
  std::vector<Cycle> cycles;
};

/// Emits the conflict-avoidance rows for every pair / combination that meets
/// the timing premises of a pattern and involves a parametric region.
/// Fixed regions enter the rows through their inscribed box; InputError when
/// one has none. Pairs and combinations made only of fixed regions are checked
/// directly and a detected conflict is raised as ConflictError.
Resolution resolution_constraints(const BundleMap& bundles, const UndirectedGraph& g_rewritten,
                                  const ConflictOptions& options = {});

/// Post-solve audit: every detector on every edge and on every premise-meeting
/// combination of every cycle, with parametric regions made concrete.
std::vector<ConflictRecord> audit_conflicts(const BundleMap& bundles,
                                            const UndirectedGraph& g_rewritten,
                                            const RegionValues& values,
                                            const ConflictOptions& options = {});

}  // namespace stldecomp
