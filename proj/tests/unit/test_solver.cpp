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

#include <cmath>
#include <cstring>

#include "random_instances.hpp"
#include "stldecomp/errors.hpp"
#include "stldecomp/solver.hpp"

namespace stldecomp::solver {
namespace {

// Layout [p_0..p_{n-1}, nu_0..nu_{n-1}] for one box.
LinearForm coord(std::size_t i, double c = 1.0, double k = 0.0) {
  LinearForm f;
  f.add(i, c);
  f.constant = k;
  return f;
}

void add_lower_bounds(Problem& pr, std::size_t first, std::size_t count, double bound) {
  const auto g = pr.add_group("lower bounds");
  for (std::size_t i = first; i < first + count; ++i) pr.add_row(AffineRow{coord(i, 1.0, -bound)}, g);
}

// Box of one dimension inside [-1, 1]: p + nu/2 <= 1, p - nu/2 >= -1.
Problem interval_problem() {
  Problem pr;
  pr.num_variables = 2;
  pr.objective.push_back({{1}});
  const auto g = pr.add_group("inclusion");
  LinearForm up = coord(0, -1.0, 1.0);
  up.add(1, -0.5);
  LinearForm lo = coord(0, 1.0, 1.0);
  lo.add(1, -0.5);
  pr.add_row(AffineRow{up}, g);
  pr.add_row(AffineRow{lo}, g);
  add_lower_bounds(pr, 1, 1, 1e-3);
  pr.initial_point = (Eigen::VectorXd(2) << 0.3, 0.002).finished();
  return pr;
}

// Every vertex of a 2-D box with center (x0, x1) and sizes (x2, x3) inside
// a ball.
Problem ball_vertex_problem(const Eigen::Vector2d& center, double radius) {
  Problem pr;
  pr.num_variables = 4;
  pr.objective.push_back({{2, 3}});
  const auto g = pr.add_group("inclusion");
  for (int v = 0; v < 4; ++v) {
    const double s0 = (v & 2) ? 0.5 : -0.5, s1 = (v & 1) ? 0.5 : -0.5;
    BallRow row;
    LinearForm a = coord(0), b = coord(1);
    a.add(2, s0);
    b.add(3, s1);
    row.point = {a, b};
    row.center = center;
    row.radius = radius;
    pr.add_row(row, g);
  }
  add_lower_bounds(pr, 2, 2, 1e-3);
  pr.initial_point = (Eigen::VectorXd(4) << center[0], center[1], 2e-3, 2e-3).finished();
  return pr;
}

TEST(Solve, IntervalFillsTarget) {
  const auto sol = solve(interval_problem());
  ASSERT_EQ(sol.status, Status::kOptimal);
  EXPECT_NEAR(sol.values[0], 0.0, 1e-5);
  EXPECT_NEAR(sol.values[1], 2.0, 1e-5);
  EXPECT_NEAR(sol.objective, 0.5, 1e-6);
  EXPECT_LE(sol.max_violation, 1e-6);
}

TEST(Solve, InscribedSquareInBall) {
  const auto sol = solve(ball_vertex_problem({1.0, -2.0}, 3.0));
  ASSERT_EQ(sol.status, Status::kOptimal);
  EXPECT_NEAR(sol.values[2], 3.0 * std::sqrt(2.0), 1e-4);
  EXPECT_NEAR(sol.values[3], 3.0 * std::sqrt(2.0), 1e-4);
  EXPECT_NEAR(sol.objective, 1.0 / 18.0, 1e-6);
}

TEST(Solve, ObjectiveHistoryIsMonotone) {
  const auto sol = solve(ball_vertex_problem({0.0, 0.0}, 2.0));
  ASSERT_GE(sol.objective_history.size(), 2u);
  for (std::size_t k = 1; k < sol.objective_history.size(); ++k)
    EXPECT_LE(sol.objective_history[k], sol.objective_history[k - 1] + 1e-9);
}

TEST(Solve, BitIdenticalRuns) {
  const auto pr = ball_vertex_problem({0.5, 0.25}, 1.5);
  const auto a = solve(pr);
  const auto b = solve(pr);
  ASSERT_EQ(a.values.size(), b.values.size());
  EXPECT_EQ(std::memcmp(a.values.data(), b.values.data(), sizeof(double) * a.values.size()), 0);
  EXPECT_EQ(a.objective_history, b.objective_history);
  EXPECT_EQ(a.newton_steps, b.newton_steps);
}

TEST(PhaseOne, GenerousBallIsFeasible) {
  auto pr = ball_vertex_problem({4.0, 4.0}, 5.0);
  pr.initial_point = Eigen::VectorXd::Constant(4, 0.01);
  pr.initial_point[0] = 20.0;  // far outside
  const auto r = phase_one(pr);
  ASSERT_EQ(r.status, Status::kFeasible);
  for (const auto& row : pr.rows) EXPECT_GT(row_margin(row, r.point), 0.0);
}

TEST(PhaseOne, TinyBallIsInfeasible) {
  const auto pr = ball_vertex_problem({0.0, 0.0}, 0.0005);
  const auto r = phase_one(pr);
  EXPECT_EQ(r.status, Status::kInfeasible);
  EXPECT_GT(r.certificate, 0.0);
  EXPECT_EQ(solve(pr).status, Status::kInfeasible);
}

TEST(PhaseOne, NoRowsKeepsInitialPoint) {
  Problem pr;
  pr.num_variables = 3;
  pr.initial_point = (Eigen::VectorXd(3) << 1.0, 2.0, 3.0).finished();
  const auto r = phase_one(pr);
  EXPECT_EQ(r.status, Status::kFeasible);
  EXPECT_EQ(r.point, pr.initial_point);
}

TEST(MinimizeMaxViolation, ReportsSeparation) {
  // x >= 1 and x <= -1: best max violation is 1 at x = 0.
  Problem pr;
  pr.num_variables = 1;
  const auto g = pr.add_group("g");
  pr.add_row(AffineRow{coord(0, 1.0, -1.0)}, g);
  pr.add_row(AffineRow{coord(0, -1.0, -1.0)}, g);
  const auto r = minimize_max_violation(pr);
  EXPECT_NEAR(r.point[0], 0.0, 1e-5);
}

TEST(CheckPoint, ZeroSizesFailLowerBounds) {
  const auto pr = ball_vertex_problem({0.0, 0.0}, 3.0);
  const auto rep = check_point(pr, Eigen::VectorXd::Zero(4));
  EXPECT_FALSE(rep.passed);
  EXPECT_NEAR(rep.group_margins.at(1), -1e-3, 1e-15);
  EXPECT_THROW(check_point(pr, Eigen::VectorXd::Zero(3)), InputError);
}

TEST(CheckPoint, TableValuesForOnePath) {
  // Aggregate of two reference boxes against Ball{[15,15], 3}.
  const auto pr = ball_vertex_problem({15.0, 15.0}, 3.0);
  const Eigen::VectorXd x = (Eigen::VectorXd(4) << -9.99 + 25.0, 9.99 + 5.0, 1.89 + 0.91, 1.89 + 0.91).finished();
  const auto rep = check_point(pr, x);
  EXPECT_TRUE(rep.passed);
  EXPECT_NEAR(rep.group_margins.at(0), 3.0 - std::hypot(1.41, 1.41), 1e-9);
}

TEST(Params, Validation) {
  SolverParams p;
  p.barrier_decrease = 1.5;
  EXPECT_THROW(validate(p), InputError);
  p = {};
  p.tol = 0.0;
  EXPECT_THROW(validate(p), InputError);
  EXPECT_NO_THROW(validate(SolverParams{}));
}

double rel_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).lpNorm<Eigen::Infinity>() / std::max(1.0, b.lpNorm<Eigen::Infinity>());
}

TEST(Gradients, MatchCentralDifferences) {
  testing::Rng rng(59);
  const auto pr = ball_vertex_problem({1.0, 1.0}, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd x(4);
    x << testing::uniform(rng, -1, 1), testing::uniform(rng, -1, 1), testing::uniform(rng, 0.5, 2),
        testing::uniform(rng, 0.5, 2);
    const double h = 1e-6;
    Eigen::VectorXd fd(4);
    for (int k = 0; k < 4; ++k) {
      Eigen::VectorXd xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      fd[k] = (objective_value(pr, xp) - objective_value(pr, xm)) / (2 * h);
    }
    EXPECT_LT(rel_error(objective_gradient(pr, x), fd), 1e-5);
    for (const auto& row : pr.rows) {
      for (int k = 0; k < 4; ++k) {
        Eigen::VectorXd xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        fd[k] = (smooth_row_value(row, xp) - smooth_row_value(row, xm)) / (2 * h);
      }
      EXPECT_LT(rel_error(smooth_row_gradient(row, 4, x), fd), 1e-5);
    }
  }
}

}  // namespace
}  // namespace stldecomp::solver
