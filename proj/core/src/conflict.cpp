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


#include "stldecomp/conflict.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "stldecomp/errors.hpp"
#include "stldecomp/solver.hpp"

namespace stldecomp {

using detail::throw_input;

std::vector<std::size_t> EdgeTaskBundle::always_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < conjuncts.size(); ++k)
    if (conjuncts[k].op == TemporalOp::kAlways) out.push_back(k);
  return out;
}

std::vector<std::size_t> EdgeTaskBundle::eventually_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < conjuncts.size(); ++k)
    if (conjuncts[k].op == TemporalOp::kEventually) out.push_back(k);
  return out;
}

std::string to_string(ConflictType type) { return "type" + std::to_string(static_cast<int>(type)); }

namespace {

std::string cycle_text(const Cycle& c) {
  std::string s = "[";
  for (std::size_t k = 0; k < c.nodes.size(); ++k) s += (k ? "," : "") + std::to_string(c.nodes[k]);
  return s + "]";
}

// Concrete region of a conjunct over the bundle orientation, or nothing when a
// parametric region has no values.
std::optional<PredicateFunction> concrete(const BundleConjunct& c,
                                          const std::optional<RegionValues>& values) {
  if (!c.is_parametric()) return *c.fixed;
  if (!values) return std::nullopt;
  return PredicateFunction(c.parametric->evaluate(*values->parameters, *values->values));
}

const HyperRect& inscribed_of(const BundleConjunct& c) {
  if (!c.inscribed) throw_input("region of " + c.label + " is unbounded and cannot be inscribed in a box");
  return *c.inscribed;
}

RectExpr expr_of(const BundleConjunct& c) {
  return c.is_parametric() ? *c.parametric : RectExpr::constant(inscribed_of(c));
}

double box_distance(const Vec& z, const Vec& center, const Vec& size) {
  return ((z - center).cwiseAbs() - 0.5 * size).cwiseMax(0.0).norm();
}

// Whether 0 lies in the Minkowski sum of the regions. Balls and boxes are
// handled in closed form; polytopes through a small feasibility program.
bool zero_in_sum(const std::vector<PredicateFunction>& regions) {
  const auto n = regions.front().dimension();
  bool any_poly = false;
  Vec ball_center = Vec::Zero(n), box_center = Vec::Zero(n), box_size = Vec::Zero(n);
  double radius = 0.0;
  for (const auto& r : regions) {
    if (const auto* b = std::get_if<Ball>(&r.shape())) {
      ball_center += b->center;
      radius += b->radius;
    } else if (const auto* rr = std::get_if<RectRegion>(&r.shape())) {
      box_center += rr->rect.center();
      box_size += rr->rect.size();
    } else {
      any_poly = true;
    }
  }
  if (!any_poly) return box_distance(-ball_center, box_center, box_size) <= radius;

  // Points z_1..z_{K-1} free, z_K = -(z_1 + ... + z_{K-1}).
  const auto K = regions.size();
  const auto un = static_cast<std::size_t>(n);
  solver::Problem prob;
  prob.num_variables = un * (K - 1);
  for (std::size_t r = 0; r < K; ++r) {
    std::vector<solver::LinearForm> point(un);
    for (std::size_t k = 0; k < un; ++k) {
      if (r + 1 < K) {
        point[k].add(r * un + k, 1.0);
      } else {
        for (std::size_t q = 0; q + 1 < K; ++q) point[k].add(q * un + k, -1.0);
      }
    }
    append_membership_rows(prob, regions[r], point, prob.add_group("region"));
  }
  prob.initial_point = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(prob.num_variables));
  return solver::minimize_max_violation(prob).certificate <= 1e-9;
}

std::optional<ConflictType> premise(const std::vector<const BundleConjunct*>& chosen) {
  double g_lo = -std::numeric_limits<double>::infinity();
  double g_hi = std::numeric_limits<double>::infinity();
  std::vector<Interval> fs;
  for (const auto* c : chosen) {
    if (c->op == TemporalOp::kAlways) {
      g_lo = std::max(g_lo, c->interval.start);
      g_hi = std::min(g_hi, c->interval.end);
    } else {
      fs.push_back(c->interval);
    }
  }
  if (g_lo > g_hi) return std::nullopt;  // Always windows share no instant
  if (fs.empty()) return ConflictType::kType3;
  const Interval common{g_lo, g_hi};
  if (fs.size() == 1 && g_lo <= fs[0].start && fs[0].end <= g_hi) return ConflictType::kType4;
  const double tbar = fs.front().start;
  const bool same_point = std::all_of(fs.begin(), fs.end(), [&](const Interval& iv) {
    return iv.start == tbar && iv.end == tbar;
  });
  if (same_point && common.contains(tbar)) return ConflictType::kType4;
  return std::nullopt;
}

struct CycleView {
  std::vector<Edge> edges;                  // along the cycle
  std::vector<const EdgeTaskBundle*> bundles;
  std::vector<double> signs;                // -1 when the cycle runs against the bundle
};

std::optional<CycleView> view(const Cycle& cycle, const BundleMap& bundles) {
  CycleView v;
  for (const auto& e : edge_sequence(cycle)) {
    auto it = bundles.find(e.canonical());
    if (it == bundles.end() || it->second.conjuncts.empty()) return std::nullopt;
    v.edges.push_back(e);
    v.bundles.push_back(&it->second);
    v.signs.push_back(e.is_canonical() ? 1.0 : -1.0);
  }
  return v;
}

std::vector<const BundleConjunct*> pick(const CycleView& v, const Combination& comb) {
  std::vector<const BundleConjunct*> out;
  for (std::size_t k = 0; k < comb.size(); ++k) out.push_back(&v.bundles[k]->conjuncts.at(comb[k]));
  return out;
}

bool edge_pair_type1(const BundleConjunct& a, const BundleConjunct& b) {
  return a.op == TemporalOp::kAlways && b.op == TemporalOp::kAlways && a.interval.overlaps(b.interval);
}

// Returns the (always, eventually) order when the pair meets the type 2 premise.
std::optional<std::pair<const BundleConjunct*, const BundleConjunct*>> edge_pair_type2(
    const BundleConjunct& a, const BundleConjunct& b) {
  if (a.op == TemporalOp::kAlways && b.op == TemporalOp::kEventually && a.interval.contains(b.interval))
    return std::make_pair(&a, &b);
  if (b.op == TemporalOp::kAlways && a.op == TemporalOp::kEventually && b.interval.contains(a.interval))
    return std::make_pair(&b, &a);
  return std::nullopt;
}

}  // namespace

std::vector<ConflictRecord> detect_edge_conflicts(const EdgeTaskBundle& bundle,
                                                  const std::optional<RegionValues>& values) {
  std::vector<ConflictRecord> out;
  const auto& cs = bundle.conjuncts;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      const bool t1 = edge_pair_type1(cs[i], cs[j]);
      const bool t2 = edge_pair_type2(cs[i], cs[j]).has_value();
      if (!t1 && !t2) continue;
      const auto ri = concrete(cs[i], values);
      const auto rj = concrete(cs[j], values);
      if (!ri || !rj) continue;
      if (regions_intersect(*ri, *rj)) continue;
      ConflictRecord rec;
      rec.type = t1 ? ConflictType::kType1 : ConflictType::kType2;
      rec.edge = bundle.edge;
      rec.conjuncts = {cs[i].id, cs[j].id};
      rec.intervals = {cs[i].interval, cs[j].interval};
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<ConflictRecord> detect_cycle_conflicts(const Cycle& cycle, const BundleMap& bundles,
                                                   const Combination& combination,
                                                   const std::optional<RegionValues>& values) {
  const auto v = view(cycle, bundles);
  if (!v) throw_input("cycle " + cycle_text(cycle) + " has an edge without tasks");
  if (combination.size() != v->edges.size()) throw_input("combination size does not match the cycle");
  const auto chosen = pick(*v, combination);
  const auto type = premise(chosen);
  if (!type) return {};
  std::vector<PredicateFunction> regions;
  std::vector<bool> parametric;
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    auto r = concrete(*chosen[k], values);
    if (!r) return {};
    regions.push_back(v->signs[k] > 0 ? *r : r->negated());
    parametric.push_back(chosen[k]->is_parametric());
  }
  if (zero_in_sum(regions)) return {};
  ConflictRecord rec;
  rec.type = *type;
  rec.edge = v->edges.front();
  rec.cycle = cycle;
  for (const auto* c : chosen) {
    rec.conjuncts.push_back(c->id);
    rec.intervals.push_back(c->interval);
    rec.eventually_count += c->op == TemporalOp::kEventually;
  }
  rec.split = choose_split(parametric);
  return {rec};
}

std::size_t combination_count(const Cycle& cycle, const BundleMap& bundles) {
  const auto v = view(cycle, bundles);
  if (!v) return 0;
  std::size_t count = 1;
  for (const auto* b : v->bundles) {
    const auto m = b->conjuncts.size();
    if (count > std::numeric_limits<std::size_t>::max() / m) return std::numeric_limits<std::size_t>::max();
    count *= m;
  }
  return count;
}

void for_each_combination(const Cycle& cycle, const BundleMap& bundles, const ConflictOptions& options,
                          const std::function<void(const Combination&)>& visit) {
  const auto v = view(cycle, bundles);
  if (!v) return;
  const auto total = combination_count(cycle, bundles);
  if (total > options.max_combinations)
    throw_input(fmt::format("cycle {} has {} task combinations, above the cap of {}", cycle_text(cycle),
                            total, options.max_combinations));
  Combination comb(v->edges.size(), 0);
  while (true) {
    if (premise(pick(*v, comb))) visit(comb);
    std::size_t k = comb.size();
    while (k > 0) {
      --k;
      if (++comb[k] < v->bundles[k]->conjuncts.size()) break;
      comb[k] = 0;
      if (k == 0) return;
    }
  }
}

std::vector<Combination> combination_tuples(const Cycle& cycle, const BundleMap& bundles,
                                            const ConflictOptions& options) {
  std::vector<Combination> out;
  for_each_combination(cycle, bundles, options, [&](const Combination& c) { out.push_back(c); });
  return out;
}

int choose_split(const std::vector<bool>& parametric) {
  const int edges = static_cast<int>(parametric.size());
  if (edges < 2) throw_input("a cycle split needs at least two edges");
  const int mid = edges / 2;
  int best = 1, best_count = 0;
  int count = 0;
  for (int p = 1; p <= edges - 1; ++p) {
    count += parametric[static_cast<std::size_t>(p - 1)] ? 1 : 0;
    if (p == 1) {
      best_count = count;
      continue;
    }
    // Compare count/p with best_count/best without division.
    const long lhs = static_cast<long>(count) * best;
    const long rhs = static_cast<long>(best_count) * p;
    const bool better = lhs > rhs || (lhs == rhs && std::abs(p - mid) < std::abs(best - mid));
    if (better) {
      best = p;
      best_count = count;
    }
  }
  return best;
}

Resolution resolution_constraints(const BundleMap& bundles, const UndirectedGraph& g_rewritten,
                                  const ConflictOptions& options) {
  Resolution res;
  res.census.max_cycle_len = options.max_cycle_len;
  auto emit = [&](RectExpr inner, RectExpr outer, ConstraintKind kind, std::string label) {
    res.constraints.push_back({BoxInBox{std::move(inner), std::move(outer)}, kind, std::move(label)});
  };

  for (const auto& [edge, bundle] : bundles) {
    const auto& cs = bundle.conjuncts;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        const auto& a = cs[i];
        const auto& b = cs[j];
        if (edge_pair_type1(a, b)) {
          if (!a.is_parametric() && !b.is_parametric()) {
            if (!regions_intersect(*a.fixed, *b.fixed))
              throw ConflictError(fmt::format("tasks {} and {} on edge {} conflict (type 1)", a.label,
                                              b.label, to_string(edge)));
            continue;
          }
          const BundleConjunct* inner = &a;
          const BundleConjunct* outer = &b;
          if (a.is_parametric() && b.is_parametric()) {
            const double la = a.interval.length(), lb = b.interval.length();
            if (lb < la || (lb == la && b.id < a.id)) std::swap(inner, outer);
          } else if (!a.is_parametric()) {
            std::swap(inner, outer);
          }
          emit(expr_of(*inner), expr_of(*outer), ConstraintKind::kType1,
               fmt::format("type1 {} {} in {}", to_string(edge), inner->label, outer->label));
          ++res.census.type1;
        } else if (const auto pair = edge_pair_type2(a, b)) {
          const auto& [g, f] = *pair;
          if (!g->is_parametric() && !f->is_parametric()) {
            if (!regions_intersect(*g->fixed, *f->fixed))
              throw ConflictError(fmt::format("tasks {} and {} on edge {} conflict (type 2)", g->label,
                                              f->label, to_string(edge)));
            continue;
          }
          // Eventually region inside the Always one, unless only the Always
          // region is free, in which case it shrinks into the fixed target.
          const bool g_inside = g->is_parametric() && !f->is_parametric();
          const auto* inner = g_inside ? g : f;
          const auto* outer = g_inside ? f : g;
          emit(expr_of(*inner), expr_of(*outer), ConstraintKind::kType2,
               fmt::format("type2 {} {} in {}", to_string(edge), inner->label, outer->label));
          ++res.census.type2;
        }
      }
    }
  }

  res.cycles = enumerate_cycles(g_rewritten, options.max_cycle_len);
  for (const auto& cycle : res.cycles) {
    const auto v = view(cycle, bundles);
    if (!v) continue;
    ++res.census.cycles_checked;
    for_each_combination(cycle, bundles, options, [&](const Combination& comb) {
      ++res.census.combinations_checked;
      const auto chosen = pick(*v, comb);
      const auto type = premise(chosen);
      std::vector<bool> parametric;
      for (const auto* c : chosen) parametric.push_back(c->is_parametric());
      const bool any = std::any_of(parametric.begin(), parametric.end(), [](bool b) { return b; });
      std::string ids;
      for (const auto* c : chosen) ids += (ids.empty() ? "" : ",") + c->label;
      if (!any) {
        if (!detect_cycle_conflicts(cycle, bundles, comb).empty())
          throw ConflictError(fmt::format("tasks {} around cycle {} conflict ({})", ids, cycle_text(cycle),
                                          to_string(*type)));
        return;
      }
      const int p = choose_split(parametric);
      const auto* first = chosen.front();
      const int dim = static_cast<int>(first->is_parametric() ? first->parametric->center_offset.size()
                                                              : first->fixed->dimension());
      RectExpr left = RectExpr::zero(dim), right = RectExpr::zero(dim);
      for (std::size_t k = 0; k < chosen.size(); ++k) {
        RectExpr e = expr_of(*chosen[k]);
        if (v->signs[k] < 0) e = e.negated();
        (static_cast<int>(k) < p ? left : right) += e;
      }
      const auto kind = *type == ConflictType::kType3 ? ConstraintKind::kType3 : ConstraintKind::kType4;
      emit(std::move(left), right.negated(), kind,
           fmt::format("{} cycle {} p={} [{}]", to_string(*type), cycle_text(cycle), p, ids));
      ++(*type == ConflictType::kType3 ? res.census.type3 : res.census.type4);
    });
  }
  return res;
}

std::vector<ConflictRecord> audit_conflicts(const BundleMap& bundles, const UndirectedGraph& g_rewritten,
                                            const RegionValues& values, const ConflictOptions& options) {
  std::vector<ConflictRecord> out;
  for (const auto& [_, bundle] : bundles) {
    auto recs = detect_edge_conflicts(bundle, values);
    out.insert(out.end(), recs.begin(), recs.end());
  }
  for (const auto& cycle : enumerate_cycles(g_rewritten, options.max_cycle_len)) {
    if (!view(cycle, bundles)) continue;
    for_each_combination(cycle, bundles, options, [&](const Combination& comb) {
      auto recs = detect_cycle_conflicts(cycle, bundles, comb, values);
      out.insert(out.end(), recs.begin(), recs.end());
    });
  }
  return out;
}

}  // namespace stldecomp
