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


#include "stldecomp/solver.hpp"

#include <cmath>
#include <limits>

#include "stldecomp/errors.hpp"

namespace stldecomp::solver {

using detail::throw_input;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNewtonDecrement = 1e-10;
constexpr double kMinStep = 1e-20;

// Every row in one smooth form: a.x + c - ||V x + w||^2 (the quadratic part
// only for ball rows, where c = radius^2).
struct CompiledRow {
  Eigen::VectorXd a;
  double c = 0.0;
  bool quadratic = false;
  Eigen::MatrixXd V;
  Eigen::VectorXd w;

  double value(const Eigen::VectorXd& x) const {
    double v = a.dot(x) + c;
    if (quadratic) v -= (V * x + w).squaredNorm();
    return v;
  }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    if (!quadratic) return a;
    return a - 2.0 * V.transpose() * (V * x + w);
  }
};

// Objective: sum of inverse volumes plus an optional linear part.
struct Objective {
  std::vector<std::vector<std::size_t>> terms;
  Eigen::VectorXd linear;  // empty when absent

  double value(const Eigen::VectorXd& x) const {
    double f = linear.size() ? linear.dot(x) : 0.0;
    for (const auto& t : terms) {
      double prod = 1.0;
      for (auto k : t) {
        if (!(x[static_cast<Eigen::Index>(k)] > 0.0)) return kInf;
        prod *= x[static_cast<Eigen::Index>(k)];
      }
      f += 1.0 / prod;
    }
    return f;
  }
  void add_derivatives(const Eigen::VectorXd& x, double scale, Eigen::VectorXd& g,
                       Eigen::MatrixXd& H) const {
    if (linear.size()) g += scale * linear;
    for (const auto& t : terms) {
      double prod = 1.0;
      for (auto k : t) prod *= x[static_cast<Eigen::Index>(k)];
      const double T = 1.0 / prod;
      for (auto a : t) {
        const auto ia = static_cast<Eigen::Index>(a);
        g[ia] -= scale * T / x[ia];
        for (auto b : t) {
          const auto ib = static_cast<Eigen::Index>(b);
          H(ia, ib) += scale * (a == b ? 2.0 : 1.0) * T / (x[ia] * x[ib]);
        }
      }
    }
  }
};

Eigen::VectorXd dense(const LinearForm& f, std::size_t n) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (const auto& [k, v] : f.terms) {
    if (k >= n) throw_input("row references variable " + std::to_string(k) + " of " + std::to_string(n));
    a[static_cast<Eigen::Index>(k)] += v;
  }
  return a;
}

CompiledRow compile(const Row& row, std::size_t n) {
  CompiledRow r;
  if (const auto* af = std::get_if<AffineRow>(&row)) {
    r.a = dense(af->form, n);
    r.c = af->form.constant;
    return r;
  }
  const auto& b = std::get<BallRow>(row);
  const auto d = static_cast<Eigen::Index>(b.point.size());
  if (b.center.size() != d) throw_input("ball row center dimension mismatch");
  r.a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  r.c = b.radius * b.radius;
  r.quadratic = true;
  r.V.resize(d, static_cast<Eigen::Index>(n));
  r.w.resize(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    r.V.row(k) = dense(b.point[static_cast<std::size_t>(k)], n).transpose();
    r.w[k] = b.point[static_cast<std::size_t>(k)].constant - b.center[k];
  }
  return r;
}

std::vector<CompiledRow> compile_all(const Problem& p) {
  std::vector<CompiledRow> rows;
  rows.reserve(p.rows.size());
  for (const auto& r : p.rows) rows.push_back(compile(r, p.num_variables));
  return rows;
}

Objective compile_objective(const Problem& p) {
  Objective obj;
  for (const auto& t : p.objective) {
    for (auto k : t.sizes)
      if (k >= p.num_variables) throw_input("objective references an unknown variable");
    obj.terms.push_back(t.sizes);
  }
  return obj;
}

// Barrier function t f(x) - sum log g_i(x); +inf outside the strict interior.
double barrier_value(const Objective& obj, const std::vector<CompiledRow>& rows, double t,
                     const Eigen::VectorXd& x) {
  double phi = 0.0;
  for (const auto& r : rows) {
    const double g = r.value(x);
    if (!(g > 0.0)) return kInf;
    phi -= std::log(g);
  }
  const double f = obj.value(x);
  if (!std::isfinite(f)) return kInf;
  return phi + t * f;
}

struct CenteringStats {
  int steps = 0;
  double grad_norm = 0.0;
  bool converged = false;  // Newton decrement fell below the threshold
};

// Damped Newton on the barrier function. `stop` is polled after every
// accepted step and ends the centering early when it returns true.
template <typename Stop>
CenteringStats center(const Objective& obj, const std::vector<CompiledRow>& rows, double t,
                      Eigen::VectorXd& x, const SolverParams& params, Stop&& stop) {
  const auto n = x.size();
  CenteringStats stats;
  for (int it = 0; it < params.max_newton_iterations; ++it) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    obj.add_derivatives(x, t, g, H);
    for (const auto& r : rows) {
      const double v = r.value(x);
      const Eigen::VectorXd dg = r.gradient(x);
      g -= dg / v;
      H.noalias() += dg * dg.transpose() / (v * v);
      if (r.quadratic) H.noalias() += 2.0 * r.V.transpose() * r.V / v;
    }
    stats.grad_norm = g.lpNorm<Eigen::Infinity>();
    // Split centers along a path leave a null space in H; a tiny ridge keeps
    // the factorization well defined without moving the Newton step.
    const double ridge = 1e-12 * (1.0 + H.diagonal().cwiseAbs().maxCoeff());
    H.diagonal().array() += ridge;
    const Eigen::VectorXd dx = -H.ldlt().solve(g);
    const double slope = g.dot(dx);
    if (!dx.allFinite()) break;
    if (-slope / 2.0 <= kNewtonDecrement) {
      stats.converged = true;
      break;
    }
    const double phi0 = barrier_value(obj, rows, t, x);
    double step = 1.0;
    Eigen::VectorXd trial = x + dx;
    double phi = barrier_value(obj, rows, t, trial);
    while (step > kMinStep && !(phi <= phi0 + params.armijo_slope * step * slope)) {
      step *= params.backtracking;
      trial = x + step * dx;
      phi = barrier_value(obj, rows, t, trial);
    }
    if (step <= kMinStep) break;
    x = trial;
    ++stats.steps;
    if (stop(x)) break;
  }
  return stats;
}

std::vector<CompiledRow> with_slack(const std::vector<CompiledRow>& rows, Eigen::Index n) {
  std::vector<CompiledRow> out;
  out.reserve(rows.size() + 1);
  for (const auto& r : rows) {
    CompiledRow e = r;
    e.a.conservativeResize(n + 1);
    e.a[n] = 1.0;
    if (e.quadratic) {
      e.V.conservativeResize(Eigen::NoChange, n + 1);
      e.V.col(n).setZero();
    }
    out.push_back(std::move(e));
  }
  // Floor s >= -1 keeps the auxiliary program bounded.
  CompiledRow floor;
  floor.a = Eigen::VectorXd::Zero(n + 1);
  floor.a[n] = 1.0;
  floor.c = 1.0;
  out.push_back(std::move(floor));
  return out;
}

Eigen::VectorXd start_point(const Problem& p) {
  const auto n = static_cast<Eigen::Index>(p.num_variables);
  if (p.initial_point.size() == 0) return Eigen::VectorXd::Zero(n);
  if (p.initial_point.size() != n) throw_input("initial point has the wrong number of variables");
  return p.initial_point;
}

bool strictly_feasible(const std::vector<CompiledRow>& rows, const Eigen::VectorXd& x) {
  for (const auto& r : rows)
    if (!(r.value(x) > 0.0)) return false;
  return true;
}

// Minimizes s subject to g_i(x) + s > 0 and s >= -1. With `early` set the
// search returns as soon as x is strictly feasible.
PhaseOneResult auxiliary(const Problem& problem, const SolverParams& params, bool early) {
  validate(params);
  const auto rows = compile_all(problem);
  const auto n = static_cast<Eigen::Index>(problem.num_variables);
  PhaseOneResult res;
  Eigen::VectorXd x0 = start_point(problem);
  if (rows.empty()) {
    res.status = Status::kFeasible;
    res.point = x0;
    res.certificate = -1.0;
    return res;
  }
  if (early && strictly_feasible(rows, x0)) {
    res.status = Status::kFeasible;
    res.point = x0;
    double worst = kInf;
    for (const auto& r : rows) worst = std::min(worst, r.value(x0));
    res.certificate = -worst;
    return res;
  }
  double worst = kInf;
  for (const auto& r : rows) worst = std::min(worst, r.value(x0));
  Eigen::VectorXd y(n + 1);
  y.head(n) = x0;
  y[n] = std::max(0.0, -worst) + 1.0;

  const auto aux_rows = with_slack(rows, n);
  Objective obj;
  obj.linear = Eigen::VectorXd::Zero(n + 1);
  obj.linear[n] = 1.0;
  const double m = static_cast<double>(aux_rows.size());

  double t = params.initial_barrier;
  bool found = false;
  auto stop = [&](const Eigen::VectorXd& z) {
    if (early && z[n] < 0.0 && strictly_feasible(rows, z.head(n))) found = true;
    return found;
  };
  res.status = Status::kIterLimit;
  for (int outer = 0; outer < params.max_outer_iterations; ++outer) {
    const auto stats = center(obj, aux_rows, t, y, params, stop);
    res.newton_steps += stats.steps;
    res.point = y.head(n);
    res.certificate = y[n];
    if (found) {
      res.status = Status::kFeasible;
      return res;
    }
    // The duality-gap bound only holds on the central path.
    if (!stats.converged) continue;
    const double lower = y[n] - m / t;
    if (lower > 0.0) {
      res.status = Status::kInfeasible;
      res.certificate = lower;
      return res;
    }
    if (m / t < params.tol) {
      if (!early && y[n] < 0.0 && strictly_feasible(rows, res.point)) res.status = Status::kFeasible;
      else if (!early && y[n] < 0.0) res.status = Status::kFeasible;
      return res;
    }
    t /= params.barrier_decrease;
  }
  if (!early && y[n] < 0.0) res.status = Status::kFeasible;
  return res;
}

}  // namespace

double LinearForm::eval(const Eigen::VectorXd& x) const {
  double v = constant;
  for (const auto& [k, c] : terms) v += c * x[static_cast<Eigen::Index>(k)];
  return v;
}

std::size_t Problem::add_group(std::string label) {
  group_labels.push_back(std::move(label));
  return group_labels.size() - 1;
}

void Problem::add_row(Row row, std::size_t group) {
  if (group >= group_labels.size()) throw_input("row assigned to an unknown group");
  rows.push_back(std::move(row));
  row_group.push_back(group);
}

double row_margin(const Row& row, const Eigen::VectorXd& x) {
  if (const auto* af = std::get_if<AffineRow>(&row)) return af->form.eval(x);
  const auto& b = std::get<BallRow>(row);
  Eigen::VectorXd u(static_cast<Eigen::Index>(b.point.size()));
  for (std::size_t k = 0; k < b.point.size(); ++k)
    u[static_cast<Eigen::Index>(k)] = b.point[k].eval(x) - b.center[static_cast<Eigen::Index>(k)];
  return b.radius - u.norm();
}

double objective_value(const Problem& problem, const Eigen::VectorXd& x) {
  return compile_objective(problem).value(x);
}

void validate(const SolverParams& p) {
  if (!(p.tol > 0.0) || !(p.initial_barrier > 0.0)) throw_input("solver tol and barrier must be positive");
  if (!(p.barrier_decrease > 0.0 && p.barrier_decrease < 1.0))
    throw_input("barrier decrease factor must lie in (0, 1)");
  if (!(p.backtracking > 0.0 && p.backtracking < 1.0))
    throw_input("backtracking factor must lie in (0, 1)");
  if (!(p.armijo_slope > 0.0 && p.armijo_slope < 1.0)) throw_input("Armijo slope must lie in (0, 1)");
  if (p.max_newton_iterations <= 0 || p.max_outer_iterations <= 0)
    throw_input("solver iteration limits must be positive");
}

std::string to_string(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kFeasible: return "feasible";
    case Status::kInfeasible: return "infeasible";
    case Status::kIterLimit: return "iter_limit";
  }
  return "unknown";
}

PhaseOneResult phase_one(const Problem& problem, const SolverParams& params) {
  return auxiliary(problem, params, true);
}

PhaseOneResult minimize_max_violation(const Problem& problem, const SolverParams& params) {
  return auxiliary(problem, params, false);
}

Solution solve(const Problem& problem, const SolverParams& params) {
  validate(params);
  if (problem.row_group.size() != problem.rows.size()) throw_input("every row needs a group");
  const auto rows = compile_all(problem);
  const auto obj = compile_objective(problem);
  Solution sol;
  Eigen::VectorXd x = start_point(problem);

  if (!strictly_feasible(rows, x)) {
    const auto p1 = phase_one(problem, params);
    sol.newton_steps += p1.newton_steps;
    sol.phase_one_certificate = p1.certificate;
    if (p1.status != Status::kFeasible) {
      sol.status = p1.status;
      sol.values = p1.point;
      sol.objective = obj.value(p1.point);
      for (const auto& r : problem.rows) sol.margins.push_back(row_margin(r, p1.point));
      double worst = 0.0;
      for (double mg : sol.margins) worst = std::max(worst, -mg);
      sol.max_violation = worst;
      return sol;
    }
    x = p1.point;
  }
  if (!std::isfinite(obj.value(x))) throw_input("objective undefined at the starting point (non-positive size)");

  const double m = static_cast<double>(rows.size());
  double t = params.initial_barrier;
  sol.status = Status::kIterLimit;
  CenteringStats last;
  if (rows.empty()) {
    sol.status = obj.terms.empty() ? Status::kOptimal : Status::kIterLimit;
  } else {
    for (int outer = 0; outer < params.max_outer_iterations; ++outer) {
      last = center(obj, rows, t, x, params, [](const Eigen::VectorXd&) { return false; });
      sol.newton_steps += last.steps;
      sol.outer_iterations = outer + 1;
      sol.objective_history.push_back(obj.value(x));
      if (!last.converged) continue;
      if (m / t < params.tol) {
        sol.status = Status::kOptimal;
        break;
      }
      t /= params.barrier_decrease;
    }
  }
  sol.values = x;
  sol.objective = obj.value(x);
  sol.duality_gap = rows.empty() ? 0.0 : m / t;
  sol.kkt_residual = rows.empty() ? 0.0 : last.grad_norm / t;
  for (const auto& r : problem.rows) sol.margins.push_back(row_margin(r, x));
  double worst = 0.0;
  for (double mg : sol.margins) worst = std::max(worst, -mg);
  sol.max_violation = worst;
  return sol;
}

FeasibilityReport check_point(const Problem& problem, const Eigen::VectorXd& values, double tol) {
  if (values.size() != static_cast<Eigen::Index>(problem.num_variables))
    throw_input("check point needs " + std::to_string(problem.num_variables) + " values, got " +
                std::to_string(values.size()));
  FeasibilityReport rep;
  rep.group_margins.assign(problem.group_labels.size(), kInf);
  rep.min_margin = kInf;
  for (std::size_t i = 0; i < problem.rows.size(); ++i) {
    const double mg = row_margin(problem.rows[i], values);
    rep.row_margins.push_back(mg);
    auto& gm = rep.group_margins.at(problem.row_group.at(i));
    gm = std::min(gm, mg);
    rep.min_margin = std::min(rep.min_margin, mg);
  }
  rep.passed = rep.min_margin >= -tol;
  return rep;
}

Eigen::VectorXd objective_gradient(const Problem& problem, const Eigen::VectorXd& x) {
  const auto obj = compile_objective(problem);
  const auto n = static_cast<Eigen::Index>(problem.num_variables);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  obj.add_derivatives(x, 1.0, g, H);
  return g;
}

double smooth_row_value(const Row& row, const Eigen::VectorXd& x) {
  return compile(row, static_cast<std::size_t>(x.size())).value(x);
}

Eigen::VectorXd smooth_row_gradient(const Row& row, std::size_t num_variables,
                                    const Eigen::VectorXd& x) {
  return compile(row, num_variables).gradient(x);
}

}  // namespace stldecomp::solver
