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


#include "stldecomp/geometry.hpp"

#include <cmath>
#include <limits>

#include "stldecomp/errors.hpp"
#include "stldecomp/problem.hpp"
#include "stldecomp/solver.hpp"

namespace stldecomp {

using detail::throw_input;

HyperRect::HyperRect(Vec center, Vec size) : center_(std::move(center)), size_(std::move(size)) {
  if (center_.size() != size_.size()) throw_input("hyper-rectangle center and size differ in dimension");
  if (center_.size() == 0) throw_input("hyper-rectangle must have dimension >= 1");
  for (Eigen::Index k = 0; k < size_.size(); ++k) {
    if (!(size_[k] > 0.0) || !std::isfinite(size_[k]))
      throw_input("hyper-rectangle sizes must be positive and finite");
    if (!std::isfinite(center_[k])) throw_input("hyper-rectangle center must be finite");
  }
}

bool HyperRect::contains(const Vec& z, double tol) const {
  if (z.size() != dimension()) throw_input("point dimension does not match hyper-rectangle");
  return ((z - center_).cwiseAbs() - 0.5 * size_).maxCoeff() <= tol;
}

PredicateFunction::PredicateFunction(Ball ball) : shape_(std::move(ball)) {
  const auto& b = std::get<Ball>(shape_);
  if (b.center.size() == 0) throw_input("ball center must have dimension >= 1");
  if (!(b.radius > 0.0) || !std::isfinite(b.radius)) throw_input("ball radius must be positive");
  if (!b.center.allFinite()) throw_input("ball center must be finite");
}

PredicateFunction::PredicateFunction(RectRegion rect) : shape_(std::move(rect)) {}

PredicateFunction::PredicateFunction(Polytope polytope) : shape_(std::move(polytope)) {
  const auto& p = std::get<Polytope>(shape_);
  if (p.rows.empty()) throw_input("polytope needs at least one row");
  const auto n = p.rows.front().normal.size();
  if (n == 0) throw_input("polytope normals must have dimension >= 1");
  for (const auto& row : p.rows) {
    if (row.normal.size() != n) throw_input("polytope rows differ in dimension");
    if (!row.normal.allFinite() || !std::isfinite(row.offset))
      throw_input("polytope rows must be finite");
  }
}

Eigen::Index PredicateFunction::dimension() const {
  return std::visit(
      [](const auto& s) -> Eigen::Index {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) return s.center.size();
        else if constexpr (std::is_same_v<T, RectRegion>) return s.rect.dimension();
        else return s.rows.front().normal.size();
      },
      shape_);
}

PredicateFunction PredicateFunction::negated() const {
  return std::visit(
      [](const auto& s) -> PredicateFunction {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return Ball{-s.center, s.radius};
        } else if constexpr (std::is_same_v<T, RectRegion>) {
          return RectRegion{negate(s.rect)};
        } else {
          Polytope out;
          for (const auto& row : s.rows) out.rows.push_back({-row.normal, row.offset});
          return out;
        }
      },
      shape_);
}

double eval_predicate(const PredicateFunction& pf, const Vec& z) {
  if (z.size() != pf.dimension()) throw_input("state dimension does not match predicate");
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return s.radius - (z - s.center).norm();
        } else if constexpr (std::is_same_v<T, RectRegion>) {
          return (0.5 * s.rect.size() - (z - s.rect.center()).cwiseAbs()).minCoeff();
        } else {
          double h = std::numeric_limits<double>::infinity();
          for (const auto& row : s.rows) h = std::min(h, row.offset - row.normal.dot(z));
          return h;
        }
      },
      pf.shape());
}

Vec vertex_signs(Eigen::Index n, std::size_t index) {
  Vec s(n);
  for (Eigen::Index k = 0; k < n; ++k) s[k] = ((index >> (n - 1 - k)) & 1U) ? 1.0 : -1.0;
  return s;
}

namespace {

void check_budget(Eigen::Index n, int budget) {
  if (n > budget)
    throw_input("dimension " + std::to_string(n) + " exceeds the vertex budget of " +
                std::to_string(budget));
}

}  // namespace

std::vector<Vec> vertices(const HyperRect& rect, int vertex_budget) {
  const auto n = rect.dimension();
  check_budget(n, vertex_budget);
  std::vector<Vec> out;
  const std::size_t count = std::size_t{1} << n;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(rect.center() + 0.5 * vertex_signs(n, i).cwiseProduct(rect.size()));
  return out;
}

HyperRect minkowski_sum(std::span<const HyperRect> rects) {
  if (rects.empty()) throw_input("Minkowski sum of an empty list");
  Vec c = rects.front().center();
  Vec s = rects.front().size();
  for (std::size_t i = 1; i < rects.size(); ++i) {
    if (rects[i].dimension() != c.size()) throw_input("Minkowski sum dimension mismatch");
    c += rects[i].center();
    s += rects[i].size();
  }
  return HyperRect(std::move(c), std::move(s));
}

HyperRect minkowski_sum(const HyperRect& a, const HyperRect& b) {
  const HyperRect both[] = {a, b};
  return minkowski_sum(std::span<const HyperRect>(both));
}

HyperRect negate(const HyperRect& rect) { return HyperRect(-rect.center(), rect.size()); }

double superlevel_margin(const Vec& center, const Vec& size, const PredicateFunction& pf,
                         int vertex_budget) {
  const auto n = center.size();
  if (size.size() != n || pf.dimension() != n) throw_input("superlevel margin dimension mismatch");
  check_budget(n, vertex_budget);
  double m = std::numeric_limits<double>::infinity();
  const std::size_t count = std::size_t{1} << n;
  for (std::size_t i = 0; i < count; ++i)
    m = std::min(m, eval_predicate(pf, center + 0.5 * vertex_signs(n, i).cwiseProduct(size)));
  return m;
}

double superlevel_margin(const HyperRect& rect, const PredicateFunction& pf, int vertex_budget) {
  return superlevel_margin(rect.center(), rect.size(), pf, vertex_budget);
}

double box_in_box_margin(const Vec& inner_center, const Vec& inner_size, const Vec& outer_center,
                         const Vec& outer_size) {
  const auto n = inner_center.size();
  if (inner_size.size() != n || outer_center.size() != n || outer_size.size() != n)
    throw_input("box-in-box dimension mismatch");
  return (0.5 * outer_size - (inner_center - outer_center).cwiseAbs() - 0.5 * inner_size)
      .minCoeff();
}

double box_in_box_margin(const HyperRect& inner, const HyperRect& outer) {
  return box_in_box_margin(inner.center(), inner.size(), outer.center(), outer.size());
}

namespace {

constexpr double kInscribeCap = 1e6;

// Maximum-volume axis-aligned box inside {normal . z <= offset}: the box
// constraint is affine in (p, nu) as a.p + sum |a_k| nu_k / 2 <= b.
HyperRect inscribe_polytope(const Polytope& poly) {
  const auto n = static_cast<std::size_t>(poly.rows.front().normal.size());
  solver::Problem prob;
  prob.num_variables = 2 * n;
  solver::InverseVolumeTerm vol;
  for (std::size_t k = 0; k < n; ++k) vol.sizes.push_back(n + k);
  prob.objective.push_back(vol);
  const auto g = prob.add_group("polytope");
  for (const auto& row : poly.rows) {
    solver::LinearForm f;
    f.constant = row.offset;
    for (std::size_t k = 0; k < n; ++k) {
      if (row.normal[k] != 0.0) {
        f.add(k, -row.normal[k]);
        f.add(n + k, -0.5 * std::abs(row.normal[k]));
      }
    }
    prob.add_row(solver::AffineRow{f}, g);
  }
  const auto cap = prob.add_group("cap");
  for (std::size_t k = 0; k < n; ++k) {
    solver::LinearForm lo{{{n + k, 1.0}}, 0.0};
    solver::LinearForm hi{{{n + k, -1.0}}, kInscribeCap};
    solver::LinearForm plo{{{k, 1.0}}, kInscribeCap};
    solver::LinearForm phi{{{k, -1.0}}, kInscribeCap};
    for (auto* f : {&lo, &hi, &plo, &phi}) prob.add_row(solver::AffineRow{*f}, cap);
  }
  prob.initial_point = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * n));
  const auto start = solver::minimize_max_violation(prob);
  if (start.status != solver::Status::kFeasible)
    throw_input("polytope has an empty interior; no box can be inscribed");
  prob.initial_point = start.point;
  const auto sol = solver::solve(prob);
  if (sol.status == solver::Status::kInfeasible)
    throw_input("polytope has an empty interior; no box can be inscribed");
  Vec p = sol.values.head(static_cast<Eigen::Index>(n));
  Vec nu = sol.values.tail(static_cast<Eigen::Index>(n));
  if (nu.maxCoeff() > 0.5 * kInscribeCap || p.cwiseAbs().maxCoeff() > 0.5 * kInscribeCap)
    throw_input("polytope is unbounded; cannot inscribe a box");
  return HyperRect(p, nu);
}

double box_distance(const Vec& z, const HyperRect& r) {
  return ((z - r.center()).cwiseAbs() - 0.5 * r.size()).cwiseMax(0.0).norm();
}

}  // namespace

HyperRect inscribe_rect(const PredicateFunction& pf) {
  return std::visit(
      [](const auto& s) -> HyperRect {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          const auto n = s.center.size();
          const double side = 2.0 * s.radius / std::sqrt(static_cast<double>(n));
          return HyperRect(s.center, Vec::Constant(n, side));
        } else if constexpr (std::is_same_v<T, RectRegion>) {
          return s.rect;
        } else {
          return inscribe_polytope(s);
        }
      },
      pf.shape());
}

bool regions_intersect(const PredicateFunction& a, const PredicateFunction& b) {
  if (a.dimension() != b.dimension()) throw_input("region dimension mismatch");
  const auto* ba = std::get_if<Ball>(&a.shape());
  const auto* bb = std::get_if<Ball>(&b.shape());
  const auto* ra = std::get_if<RectRegion>(&a.shape());
  const auto* rb = std::get_if<RectRegion>(&b.shape());
  if (ba && bb) return (ba->center - bb->center).norm() <= ba->radius + bb->radius;
  if (ba && rb) return box_distance(ba->center, rb->rect) <= ba->radius;
  if (ra && bb) return box_distance(bb->center, ra->rect) <= bb->radius;
  if (ra && rb) return box_in_box_margin(ra->rect.center(), Vec::Zero(a.dimension()),
                                         rb->rect.center(), ra->rect.size() + rb->rect.size()) >= 0.0;
  // A polytope is involved: minimize the larger violation over a common point.
  const auto n = static_cast<std::size_t>(a.dimension());
  solver::Problem prob;
  prob.num_variables = n;
  std::vector<solver::LinearForm> point(n);
  for (std::size_t k = 0; k < n; ++k) point[k].add(k, 1.0);
  append_membership_rows(prob, a, point, prob.add_group("a"));
  append_membership_rows(prob, b, point, prob.add_group("b"));
  prob.initial_point = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  const auto r = solver::minimize_max_violation(prob);
  return r.certificate <= 1e-9;
}

}  // namespace stldecomp
