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

// Log-barrier interior-point solver for
//
//   minimize    sum_t 1 / prod_{k in t} x[k]
//   subject to  a_i . x + c_i >= 0                      (affine rows)
//               radius_j - ||V_j x + v_j - center_j|| >= 0   (ball rows)
//
// Ball rows enter the barrier in the smooth squared form
// radius^2 - ||.||^2 >= 0. A phase-I stage finds a strictly feasible start
// or certifies that none exists.

#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace stldecomp::solver {

/// c + sum coeff * x[index].
struct LinearForm {
  std::vector<std::pair<std::size_t, double>> terms;
  double constant = 0.0;

  double eval(const Eigen::VectorXd& x) const;
  void add(std::size_t index, double coeff) { terms.emplace_back(index, coeff); }
};

/// form(x) >= 0.
struct AffineRow {
  LinearForm form;
};

/// ||point(x) - center|| <= radius, with point(x) an affine vector map.
struct BallRow {
  std::vector<LinearForm> point;
  Eigen::VectorXd center;
  double radius = 0.0;
};

using Row = std::variant<AffineRow, BallRow>;

/// 1 / prod_k x[sizes[k]].
struct InverseVolumeTerm {
  std::vector<std::size_t> sizes;
};

struct Problem {
  std::size_t num_variables = 0;
  std::vector<InverseVolumeTerm> objective;
  std::vector<Row> rows;
  /// Constraint group of each row; groups carry labels for reporting.
  std::vector<std::size_t> row_group;
  std::vector<std::string> group_labels;
  /// Starting point; zero-filled when empty.
  Eigen::VectorXd initial_point;

  std::size_t add_group(std::string label);
  void add_row(Row row, std::size_t group);
};

/// Geometric margin of one row: form(x) for affine rows, radius - distance
/// for ball rows. Positive inside.
double row_margin(const Row& row, const Eigen::VectorXd& x);
double objective_value(const Problem& problem, const Eigen::VectorXd& x);

struct SolverParams {
  double tol = 1e-6;
  double barrier_decrease = 0.2;  // t <- t / barrier_decrease per outer step
  double initial_barrier = 1.0;
  int max_newton_iterations = 50;
  int max_outer_iterations = 60;
  double backtracking = 0.5;
  double armijo_slope = 1e-4;
};

/// Throws InputError unless every parameter is positive and both factors lie
/// in (0, 1).
void validate(const SolverParams& params);

enum class Status { kOptimal, kFeasible, kInfeasible, kIterLimit };

std::string to_string(Status status);

struct PhaseOneResult {
  Status status = Status::kIterLimit;  // kFeasible, kInfeasible or kIterLimit
  Eigen::VectorXd point;
  /// Best max-violation reached (negative when strictly feasible). For
  /// kInfeasible this is a proven positive lower bound.
  double certificate = 0.0;
  int newton_steps = 0;
};

/// Finds x with every row margin strictly positive, starting from the
/// problem's initial point. Returns the initial point unchanged when it is
/// already strictly feasible.
PhaseOneResult phase_one(const Problem& problem, const SolverParams& params = {});

/// Minimizes max_i(-row_i(x)) to convergence and returns the optimum point and
/// value. Used by geometric feasibility tests where the sign of the optimum
/// decides, rather than the first strictly feasible point.
PhaseOneResult minimize_max_violation(const Problem& problem, const SolverParams& params = {});

struct Solution {
  Status status = Status::kIterLimit;
  Eigen::VectorXd values;
  double objective = 0.0;
  std::vector<double> margins;  // per row, geometric
  double max_violation = 0.0;   // max(0, -min margin)
  double kkt_residual = 0.0;
  double duality_gap = 0.0;
  int outer_iterations = 0;
  int newton_steps = 0;
  double phase_one_certificate = 0.0;
  /// True objective after each centering step.
  std::vector<double> objective_history;
};

/// Barrier path following: minimize t f(x) - sum log g_i(x) by damped Newton
/// steps with backtracking, growing t until rows / t < tol. Runs phase I first
/// when the initial point is not strictly feasible. Deterministic.
Solution solve(const Problem& problem, const SolverParams& params = {});

struct FeasibilityReport {
  std::vector<double> row_margins;
  std::vector<double> group_margins;  // min over the rows of each group
  double min_margin = 0.0;
  bool passed = false;
};

/// Pure evaluation of every row at `values`; no solving. Throws InputError
/// when `values` does not cover every variable.
FeasibilityReport check_point(const Problem& problem, const Eigen::VectorXd& values,
                              double tol = 1e-6);

/// Analytic gradient of the objective and of a row's barrier form (affine:
/// the form itself; ball: radius^2 - ||.||^2). Exposed for derivative checks.
Eigen::VectorXd objective_gradient(const Problem& problem, const Eigen::VectorXd& x);
double smooth_row_value(const Row& row, const Eigen::VectorXd& x);
Eigen::VectorXd smooth_row_gradient(const Row& row, std::size_t num_variables,
                                    const Eigen::VectorXd& x);

}  // namespace stldecomp::solver
