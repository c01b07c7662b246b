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


#include <gtest/gtest.h>

#include "random_instances.hpp"
#include "stldecomp/conflict.hpp"
#include "stldecomp/errors.hpp"

namespace stldecomp {
namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

BundleConjunct fixed(std::size_t id, TemporalOp op, Interval iv, PredicateFunction pf) {
  BundleConjunct c;
  c.id = id;
  c.label = "c" + std::to_string(id);
  c.op = op;
  c.interval = iv;
  c.inscribed = inscribe_rect(pf);
  c.fixed = std::move(pf);
  return c;
}

BundleConjunct param(std::size_t id, TemporalOp op, Interval iv, std::size_t block) {
  BundleConjunct c;
  c.id = id;
  c.label = "c" + std::to_string(id);
  c.op = op;
  c.interval = iv;
  c.parametric = RectExpr::block(block, 2);
  return c;
}

constexpr auto G = TemporalOp::kAlways;
constexpr auto F = TemporalOp::kEventually;

EdgeTaskBundle bundle(Edge e, std::vector<BundleConjunct> cs) { return {e, std::move(cs)}; }

TEST(EdgeConflicts, Type1DisjointBoxes) {
  const auto b = bundle({1, 2}, {fixed(0, G, {0, 5}, HyperRect(v2(0, 0), v2(1, 1))),
                                 fixed(1, G, {3, 8}, HyperRect(v2(10, 10), v2(1, 1)))});
  const auto rs = detect_edge_conflicts(b);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].type, ConflictType::kType1);
  EXPECT_EQ(rs[0].conjuncts, (std::vector<std::size_t>{0, 1}));
}

TEST(EdgeConflicts, DisjointIntervalsAreFine) {
  const auto b = bundle({1, 2}, {fixed(0, G, {0, 2}, HyperRect(v2(0, 0), v2(1, 1))),
                                 fixed(1, G, {3, 8}, HyperRect(v2(10, 10), v2(1, 1)))});
  EXPECT_TRUE(detect_edge_conflicts(b).empty());
}

TEST(EdgeConflicts, Type2EventuallyInsideAlways) {
  const auto b = bundle({1, 2}, {fixed(0, G, {0, 10}, HyperRect(v2(0, 0), v2(1, 1))),
                                 fixed(1, F, {2, 3}, HyperRect(v2(5, 5), v2(1, 1)))});
  const auto rs = detect_edge_conflicts(b);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].type, ConflictType::kType2);
}

TEST(EdgeConflicts, EventuallyPairsNeverConflict) {
  const auto b = bundle({1, 2}, {fixed(0, F, {0, 10}, HyperRect(v2(0, 0), v2(1, 1))),
                                 fixed(1, F, {2, 3}, HyperRect(v2(5, 5), v2(1, 1)))});
  EXPECT_TRUE(detect_edge_conflicts(b).empty());
}

TEST(EdgeConflicts, ParametricOnlyWithValues) {
  ParameterSet ps(2);
  ps.add_block(0, {1, 2});
  Eigen::VectorXd x(4);
  x << 10, 10, 1, 1;
  const auto b = bundle({1, 2}, {fixed(0, G, {0, 5}, HyperRect(v2(0, 0), v2(1, 1))), param(1, G, {0, 5}, 0)});
  EXPECT_TRUE(detect_edge_conflicts(b).empty());
  EXPECT_EQ(detect_edge_conflicts(b, RegionValues{&ps, &x}).size(), 1u);
  x << 0.2, 0.2, 1, 1;
  EXPECT_TRUE(detect_edge_conflicts(b, RegionValues{&ps, &x}).empty());
}

BundleMap triangle(const Vec& r12, const Vec& r23, const Vec& r31, double size, Interval iv = {0, 5}) {
  // Regions are given along the cycle 1 -> 2 -> 3 -> 1; (1,3) stores -r31.
  BundleMap m;
  m[{1, 2}] = bundle({1, 2}, {fixed(0, G, iv, HyperRect(r12, Vec::Constant(2, size)))});
  m[{2, 3}] = bundle({2, 3}, {fixed(1, G, iv, HyperRect(r23, Vec::Constant(2, size)))});
  m[{1, 3}] = bundle({1, 3}, {fixed(2, G, iv, HyperRect(-r31, Vec::Constant(2, size)))});
  return m;
}

TEST(CycleConflicts, Type3WhenClosureFails) {
  const auto m = triangle(v2(1, 0), v2(1, 0), v2(1, 0), 0.1);
  const auto rs = detect_cycle_conflicts(Cycle{{1, 2, 3, 1}}, m, {0, 0, 0});
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].type, ConflictType::kType3);
  ASSERT_TRUE(rs[0].cycle.has_value());
}

TEST(CycleConflicts, ClosureAtCentersIsFine) {
  const auto m = triangle(v2(1, 0), v2(1, 0), v2(-2, 0), 1.0);
  EXPECT_TRUE(detect_cycle_conflicts(Cycle{{1, 2, 3, 1}}, m, {0, 0, 0}).empty());
}

TEST(CycleConflicts, DisjointIntervalsSkipPremise) {
  auto m = triangle(v2(1, 0), v2(1, 0), v2(1, 0), 0.1);
  m[{2, 3}].conjuncts[0].interval = {6, 9};
  EXPECT_TRUE(detect_cycle_conflicts(Cycle{{1, 2, 3, 1}}, m, {0, 0, 0}).empty());
  EXPECT_TRUE(combination_tuples(Cycle{{1, 2, 3, 1}}, m).empty());
}

TEST(CycleConflicts, OrientationAndStartInvariance) {
  testing::Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = triangle(testing::random_vec(rng, 2, -2, 2), testing::random_vec(rng, 2, -2, 2),
                            testing::random_vec(rng, 2, -2, 2), testing::uniform(rng, 0.1, 2));
    const bool a = detect_cycle_conflicts(Cycle{{1, 2, 3, 1}}, m, {0, 0, 0}).empty();
    const bool b = detect_cycle_conflicts(Cycle{{1, 3, 2, 1}}, m, {0, 0, 0}).empty();
    const bool c = detect_cycle_conflicts(Cycle{{2, 3, 1, 2}}, m, {0, 0, 0}).empty();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
  }
}

TEST(CycleConflicts, Type4SingleEventuallyInsideAlways) {
  auto m = triangle(v2(1, 0), v2(1, 0), v2(1, 0), 0.1, {0, 10});
  m[{2, 3}].conjuncts[0].op = F;
  m[{2, 3}].conjuncts[0].interval = {2, 3};
  const auto rs = detect_cycle_conflicts(Cycle{{1, 2, 3, 1}}, m, {0, 0, 0});
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].type, ConflictType::kType4);
}

TEST(Combinations, ProductAndPremiseFilter) {
  const Cycle tri{{1, 2, 3, 1}};
  BundleMap m;
  const PredicateFunction box = HyperRect(Vec::Zero(2), Vec::Ones(2));
  m[{1, 2}] = bundle({1, 2}, {fixed(0, G, {0, 5}, box), fixed(1, G, {0, 5}, box)});
  m[{2, 3}] = bundle({2, 3}, {fixed(2, G, {0, 5}, box)});
  m[{1, 3}] = bundle({1, 3}, {fixed(3, G, {0, 5}, box), fixed(4, G, {0, 5}, box), fixed(5, G, {0, 5}, box)});
  EXPECT_EQ(combination_count(tri, m), 6u);
  EXPECT_EQ(combination_tuples(tri, m).size(), 6u);
  m[{1, 3}].conjuncts[2].interval = {7, 9};
  EXPECT_EQ(combination_tuples(tri, m).size(), 4u);
  ConflictOptions tight;
  tight.max_combinations = 5;
  EXPECT_THROW(combination_tuples(tri, m, tight), InputError);

  BundleMap single;
  single[{1, 2}] = bundle({1, 2}, {fixed(0, G, {0, 5}, box)});
  single[{2, 3}] = bundle({2, 3}, {fixed(1, G, {0, 5}, box)});
  single[{1, 3}] = bundle({1, 3}, {fixed(2, G, {0, 5}, box)});
  EXPECT_EQ(combination_tuples(tri, single).size(), 1u);
}

TEST(Split, ParametricShareOnTheLeft) {
  EXPECT_EQ(choose_split({true, true, true}), 1);
  EXPECT_EQ(choose_split({false, true, true}), 2);
  EXPECT_EQ(choose_split({true, false, false, false}), 1);
  EXPECT_EQ(choose_split({true, true, false, false}), 2);
  EXPECT_EQ(choose_split({true, true, true, true}), 2);
}

const BoxInBox& box_rule(const Constraint& c) { return std::get<BoxInBox>(c.body); }

TEST(Resolution, ShorterAlwaysGoesInside) {
  BundleMap m;
  m[{1, 2}] = bundle({1, 2}, {param(0, G, {0, 5}, 0), param(1, G, {2, 5}, 1)});
  const auto r = resolution_constraints(m, UndirectedGraph(2, {{1, 2}}));
  ASSERT_EQ(r.constraints.size(), 1u);
  EXPECT_EQ(r.constraints[0].kind, ConstraintKind::kType1);
  EXPECT_EQ(box_rule(r.constraints[0]).inner.terms.at(0).block, 1u);
  EXPECT_EQ(box_rule(r.constraints[0]).outer.terms.at(0).block, 0u);
  EXPECT_EQ(r.census.type1, 1u);
}

TEST(Resolution, EqualDurationsUseSmallerIdInside) {
  BundleMap m;
  m[{1, 2}] = bundle({1, 2}, {param(4, G, {0, 5}, 0), param(3, G, {1, 6}, 1)});
  const auto r = resolution_constraints(m, UndirectedGraph(2, {{1, 2}}));
  ASSERT_EQ(r.constraints.size(), 1u);
  EXPECT_EQ(box_rule(r.constraints[0]).inner.terms.at(0).block, 1u);
}

TEST(Resolution, ParametricEventuallyInsideFixedAlways) {
  const PredicateFunction ball = Ball{Vec::Zero(2), 3.0};
  BundleMap m;
  m[{1, 2}] = bundle({1, 2}, {fixed(0, G, {0, 10}, ball), param(1, F, {4, 4}, 0)});
  const auto r = resolution_constraints(m, UndirectedGraph(2, {{1, 2}}));
  ASSERT_EQ(r.constraints.size(), 1u);
  EXPECT_EQ(r.constraints[0].kind, ConstraintKind::kType2);
  const auto& rule = box_rule(r.constraints[0]);
  EXPECT_EQ(rule.inner.terms.at(0).block, 0u);
  EXPECT_TRUE(rule.outer.is_constant());
  EXPECT_NEAR(rule.outer.size_offset[0], 3.0 * std::sqrt(2.0), 1e-12);
}

TEST(Resolution, ParametricTriangle) {
  BundleMap m;
  m[{1, 2}] = bundle({1, 2}, {param(0, G, {0, 5}, 0)});
  m[{2, 3}] = bundle({2, 3}, {param(1, G, {0, 5}, 1)});
  m[{1, 3}] = bundle({1, 3}, {param(2, G, {0, 5}, 2)});
  const auto r = resolution_constraints(m, UndirectedGraph(3, {{1, 2}, {2, 3}, {1, 3}}));
  ASSERT_EQ(r.constraints.size(), 1u);
  EXPECT_EQ(r.constraints[0].kind, ConstraintKind::kType3);
  const auto& rule = box_rule(r.constraints[0]);
  ASSERT_EQ(rule.inner.terms.size(), 1u);
  EXPECT_EQ(rule.inner.terms[0].block, 0u);
  // -(B_23 (+) B_31) with B_31 = -B_13, so the outer is -B_23 (+) B_13.
  ASSERT_EQ(rule.outer.terms.size(), 2u);
  EXPECT_EQ(rule.outer.terms[0].block, 1u);
  EXPECT_EQ(rule.outer.terms[0].sign, -1.0);
  EXPECT_EQ(rule.outer.terms[1].block, 2u);
  EXPECT_EQ(rule.outer.terms[1].sign, 1.0);
  EXPECT_EQ(r.census.type3, 1u);
  EXPECT_EQ(r.census.cycles_checked, 1u);
}

TEST(Resolution, FixedConflictsAreRejected) {
  BundleMap m;
  m[{1, 2}] = bundle({1, 2}, {fixed(0, G, {0, 5}, HyperRect(v2(0, 0), v2(1, 1))),
                              fixed(1, G, {3, 8}, HyperRect(v2(10, 10), v2(1, 1)))});
  EXPECT_THROW(resolution_constraints(m, UndirectedGraph(2, {{1, 2}})), ConflictError);
  EXPECT_THROW(resolution_constraints(triangle(v2(1, 0), v2(1, 0), v2(1, 0), 0.1),
                                      UndirectedGraph(3, {{1, 2}, {2, 3}, {1, 3}})),
               ConflictError);
}

TEST(Resolution, EveryRowIsAffineInTheDecisionVector) {
  // BoxInBox margins are piecewise affine; on a fixed sign pattern the
  // midpoint rule holds exactly.
  BundleMap m;
  m[{1, 2}] = bundle({1, 2}, {param(0, G, {0, 5}, 0), param(1, G, {2, 5}, 1)});
  const auto r = resolution_constraints(m, UndirectedGraph(2, {{1, 2}}));
  ConvexProblem pr;
  pr.parameters = ParameterSet(2);
  pr.parameters.add_block(0, {1, 2});
  pr.parameters.add_block(1, {1, 2});
  pr.constraints = r.constraints;
  const auto low = lower(pr);
  testing::Rng rng(5);
  for (int s = 0; s < 20; ++s) {
    const Eigen::VectorXd a = Eigen::VectorXd::Random(8), b = Eigen::VectorXd::Random(8);
    for (const auto& row : low.rows) {
      ASSERT_TRUE(std::holds_alternative<solver::AffineRow>(row));
      EXPECT_NEAR(solver::row_margin(row, 0.5 * (a + b)),
                  0.5 * (solver::row_margin(row, a) + solver::row_margin(row, b)), 1e-12);
    }
  }
}

}  // namespace
}  // namespace stldecomp
