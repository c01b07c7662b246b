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


#include "stldecomp/decomposer.hpp"

#include <fmt/format.h>

#include "stldecomp/errors.hpp"

namespace stldecomp {

using detail::throw_input;

std::string to_string(TbarPolicy policy) {
  switch (policy) {
    case TbarPolicy::kMidpoint: return "midpoint";
    case TbarPolicy::kStart: return "start";
    case TbarPolicy::kEnd: return "end";
  }
  return "midpoint";
}

TbarPolicy parse_tbar_policy(const std::string& text) {
  if (text == "midpoint") return TbarPolicy::kMidpoint;
  if (text == "start") return TbarPolicy::kStart;
  if (text == "end") return TbarPolicy::kEnd;
  throw_input("unknown tbar policy '" + text + "' (expected midpoint, start or end)");
}

double apply_tbar_policy(TbarPolicy policy, const Interval& iv) {
  switch (policy) {
    case TbarPolicy::kStart: return iv.start;
    case TbarPolicy::kEnd: return iv.end;
    case TbarPolicy::kMidpoint: break;
  }
  return 0.5 * (iv.start + iv.end);
}

void validate(const DecomposeOptions& o) {
  if (!(o.nu_min > 0.0)) throw_input("nu_min must be positive");
  if (!(o.tol > 0.0)) throw_input("tol must be positive");
  if (o.max_cycle_len < 3) throw_input("max_cycle_len must be at least 3");
  if (o.max_combinations == 0) throw_input("max_combinations must be positive");
  solver::validate(o.solver);
}

std::vector<ParametricTask> build_subtasks(const AtomicTask& task, const Path& path, double tbar,
                                           std::size_t family, std::size_t first_block) {
  if (!task.subject.is_pair()) throw_input("only pair tasks are decomposed along paths");
  const Edge e = task.subject.edge();
  if (path.nodes.size() < 2 || Edge{path.source(), path.target()}.canonical() != e.canonical())
    throw_input("path endpoints do not match task subject " + to_string(task.subject.edge()));
  Interval iv = task.interval;
  if (task.op == TemporalOp::kEventually) {
    if (!task.interval.contains(tbar))
      throw_input(fmt::format("tbar {} outside the task interval [{}, {}]", tbar, iv.start, iv.end));
    iv = {tbar, tbar};
  }
  std::vector<ParametricTask> out;
  std::size_t b = first_block;
  for (const auto& e : edge_sequence(path)) out.push_back({family, e, task.op, iv, b++, std::nullopt});
  return out;
}

namespace {

Vec target_center(const PredicateFunction& pf) {
  if (const auto* b = std::get_if<Ball>(&pf.shape())) return b->center;
  if (const auto* r = std::get_if<RectRegion>(&pf.shape())) return r->rect.center();
  try {
    return inscribe_rect(pf).center();
  } catch (const InputError&) {
    return Vec::Zero(pf.dimension());
  }
}

std::optional<HyperRect> try_inscribe(const PredicateFunction& pf) {
  try {
    return inscribe_rect(pf);
  } catch (const InputError&) {
    return std::nullopt;
  }
}

std::string default_label(const AtomicTask& t, std::size_t index, std::size_t count) {
  if (!t.name.empty()) return t.name;
  std::string s = fmt::format("phi_{}_{}", t.subject.edge().from, t.subject.edge().to);
  if (count > 1) s += fmt::format("#{}", index);
  return s;
}

}  // namespace

DecompositionPlan plan_decomposition(const GlobalSpec& spec, const UndirectedGraph& gc,
                                     const DecomposeOptions& options) {
  validate(options);
  if (spec.num_agents != gc.num_nodes())
    throw_input(fmt::format("spec has {} agents but the communication graph has {}", spec.num_agents,
                            gc.num_nodes()));
  if (!gc.is_connected()) throw_input("communication graph is not connected");

  DecompositionPlan plan;
  plan.dimension = spec.dimension;
  plan.parameters = ParameterSet(spec.dimension);
  plan.task_graph = UndirectedGraph(spec.num_agents);
  for (const auto& [agent, _] : spec.independent) plan.task_graph.set_self_loop(agent);
  for (const auto& [edge, _] : spec.collaborative) plan.task_graph.add_edge(edge.from, edge.to);

  std::size_t next_id = 0;
  const int n = spec.dimension;
  for (const auto& [edge, formula] : spec.collaborative) {
    if (!gc.has_edge(edge.from, edge.to)) continue;
    auto& bundle = plan.bundles[edge];
    bundle.edge = edge;
    for (std::size_t c = 0; c < formula.size(); ++c) {
      const AtomicTask t = formula.conjuncts()[c].oriented(edge);
      BundleConjunct bc;
      bc.id = next_id++;
      bc.label = default_label(formula.conjuncts()[c], c, formula.size());
      bc.op = t.op;
      bc.interval = t.interval;
      bc.fixed = t.predicate;
      bc.inscribed = try_inscribe(t.predicate);
      bundle.conjuncts.push_back(std::move(bc));
    }
  }

  std::vector<Vec> block_centers;
  for (const auto& [edge, formula] : spec.collaborative) {
    if (gc.has_edge(edge.from, edge.to)) continue;
    const Edge oriented = formula.subject().edge();
    const Path path = shortest_path(gc, oriented.from, oriented.to);
    plan.paths[edge] = path;
    for (std::size_t c = 0; c < formula.size(); ++c) {
      const AtomicTask& task = formula.conjuncts()[c];
      DecomposedConjunct fam{edge, c, task, default_label(task, c, formula.size()), path, {}};
      double tbar = apply_tbar_policy(options.tbar_policy, task.interval);
      if (auto it = options.tbar_overrides.find(task.name); !task.name.empty() && it != options.tbar_overrides.end())
        tbar = it->second;
      const std::size_t family = plan.families.size();
      fam.subtasks = build_subtasks(task, path, tbar, family, plan.parameters.num_blocks());
      const Vec center = target_center(task.predicate) / static_cast<double>(path.num_edges());
      for (const auto& st : fam.subtasks) {
        plan.parameters.add_block(family, st.edge);
        block_centers.push_back(center);
        const Edge key = st.edge.canonical();
        auto& bundle = plan.bundles[key];
        bundle.edge = key;
        BundleConjunct bc;
        bc.id = next_id++;
        bc.label = fmt::format("{}{}", fam.label, to_string(st.edge));
        bc.op = st.op;
        bc.interval = st.interval;
        bc.parametric = RectExpr::block(st.block, n, st.edge.is_canonical() ? 1.0 : -1.0);
        bundle.conjuncts.push_back(std::move(bc));
      }
      plan.families.push_back(std::move(fam));
    }
  }
  plan.rewritten_graph = rewrite_task_graph(plan.task_graph, gc, plan.paths);

  plan.initial_point = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(plan.parameters.num_variables()));
  for (std::size_t b = 0; b < plan.parameters.num_blocks(); ++b)
    plan.parameters.set(plan.initial_point, b, block_centers[b], Vec::Constant(n, 2.0 * options.nu_min));
  return plan;
}

ConvexProblem assemble_problem(const DecompositionPlan& plan,
                               const std::vector<Constraint>& conflict_constraints,
                               const DecomposeOptions& options) {
  ConvexProblem prob;
  prob.parameters = plan.parameters;
  prob.vertex_budget = options.vertex_budget;
  prob.initial_point = plan.initial_point;
  const int n = plan.dimension;
  for (std::size_t b = 0; b < plan.parameters.num_blocks(); ++b) prob.objective_blocks.push_back(b);
  for (const auto& fam : plan.families) {
    RectExpr agg = RectExpr::zero(n);
    for (const auto& st : fam.subtasks) agg += RectExpr::block(st.block, n);
    prob.constraints.push_back(
        {VertexInclusion{std::move(agg), fam.origin.predicate}, ConstraintKind::kInclusion,
         "inclusion " + fam.label});
  }
  for (std::size_t b = 0; b < plan.parameters.num_blocks(); ++b) {
    for (int k = 0; k < n; ++k) {
      prob.constraints.push_back(
          {LowerBound{plan.parameters.block(b).size_offset + static_cast<std::size_t>(k), options.nu_min},
           ConstraintKind::kLowerBound, fmt::format("nu_min block {} axis {}", b, k)});
    }
  }
  prob.constraints.insert(prob.constraints.end(), conflict_constraints.begin(), conflict_constraints.end());
  return prob;
}

HyperRect aggregate_rect(const DecomposedConjunct& family) {
  std::vector<HyperRect> rects;
  for (const auto& st : family.subtasks) {
    if (!st.solved) throw_input("family " + family.label + " has unsolved sub-tasks");
    rects.push_back(*st.solved);
  }
  return minkowski_sum(rects);
}

DecompositionResult decompose(const GlobalSpec& spec, const UndirectedGraph& gc,
                              const DecomposeOptions& options) {
  DecompositionPlan plan = plan_decomposition(spec, gc, options);
  ConflictOptions copts;
  copts.max_cycle_len = options.max_cycle_len;
  copts.max_combinations = options.max_combinations;
  Resolution res = resolution_constraints(plan.bundles, plan.rewritten_graph, copts);

  DecompositionResult out;
  out.problem = assemble_problem(plan, res.constraints, options);
  solver::SolverParams sp = options.solver;
  sp.tol = options.tol;
  out.solution = solver::solve(lower(out.problem), sp);
  if (out.solution.status == solver::Status::kInfeasible)
    throw InfeasibleError(fmt::format("decomposition program is infeasible (phase-I bound {:.6g})",
                                      out.solution.phase_one_certificate),
                          out.solution.phase_one_certificate);

  const auto& x = out.solution.values;
  out.rewritten.num_agents = spec.num_agents;
  out.rewritten.dimension = spec.dimension;
  out.rewritten.independent = spec.independent;
  for (const auto& [edge, formula] : spec.collaborative)
    if (gc.has_edge(edge.from, edge.to)) out.rewritten.collaborative.emplace(edge, formula);
  for (auto& fam : plan.families) {
    for (auto& st : fam.subtasks) {
      st.solved = HyperRect(plan.parameters.center(x, st.block), plan.parameters.size(x, st.block));
      out.rewritten.add(AtomicTask{st.op, st.interval, Subject::pair(st.edge.from, st.edge.to), *st.solved,
                                   fam.label + to_string(st.edge)});
    }
  }
  for (const auto& c : out.problem.constraints) {
    const double m = constraint_margin(out.problem, c, x);
    out.constraint_margins.push_back(m);
    if (c.kind == ConstraintKind::kInclusion) out.inclusion_margins.push_back(m);
  }
  out.task_graph = std::move(plan.task_graph);
  out.rewritten_graph = std::move(plan.rewritten_graph);
  out.families = std::move(plan.families);
  out.census = res.census;
  out.cycles = std::move(res.cycles);
  out.bundles = std::move(plan.bundles);
  return out;
}

}  // namespace stldecomp
