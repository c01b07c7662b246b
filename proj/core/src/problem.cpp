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


#include "stldecomp/problem.hpp"

#include "stldecomp/errors.hpp"

namespace stldecomp {

using detail::throw_input;
using solver::LinearForm;

std::size_t ParameterSet::add_block(std::size_t family, Edge edge) {
  if (dimension_ <= 0) throw_input("parameter set needs a positive dimension");
  const std::size_t n = static_cast<std::size_t>(dimension_);
  const std::size_t base = 2 * n * blocks_.size();
  blocks_.push_back({family, edge, base, base + n});
  return blocks_.size() - 1;
}

Vec ParameterSet::center(const Eigen::VectorXd& x, std::size_t b) const {
  return x.segment(static_cast<Eigen::Index>(block(b).center_offset), dimension_);
}

Vec ParameterSet::size(const Eigen::VectorXd& x, std::size_t b) const {
  return x.segment(static_cast<Eigen::Index>(block(b).size_offset), dimension_);
}

void ParameterSet::set(Eigen::VectorXd& x, std::size_t b, const Vec& center, const Vec& size) const {
  if (center.size() != dimension_ || size.size() != dimension_) throw_input("block value dimension mismatch");
  x.segment(static_cast<Eigen::Index>(block(b).center_offset), dimension_) = center;
  x.segment(static_cast<Eigen::Index>(block(b).size_offset), dimension_) = size;
}

RectExpr RectExpr::zero(int dimension) {
  return RectExpr{{}, Vec::Zero(dimension), Vec::Zero(dimension)};
}

RectExpr RectExpr::constant(const HyperRect& rect) {
  return RectExpr{{}, rect.center(), rect.size()};
}

RectExpr RectExpr::block(std::size_t b, int dimension, double sign) {
  RectExpr e = zero(dimension);
  e.terms.push_back({b, sign});
  return e;
}

RectExpr RectExpr::negated() const {
  RectExpr e = *this;
  for (auto& t : e.terms) t.sign = -t.sign;
  e.center_offset = -center_offset;
  return e;
}

RectExpr& RectExpr::operator+=(const RectExpr& other) {
  if (center_offset.size() == 0) {
    center_offset = other.center_offset;
    size_offset = other.size_offset;
  } else {
    if (other.center_offset.size() != center_offset.size()) throw_input("box expression dimension mismatch");
    center_offset += other.center_offset;
    size_offset += other.size_offset;
  }
  terms.insert(terms.end(), other.terms.begin(), other.terms.end());
  return *this;
}

Vec RectExpr::center(const ParameterSet& params, const Eigen::VectorXd& x) const {
  Vec c = center_offset;
  for (const auto& t : terms) c += t.sign * params.center(x, t.block);
  return c;
}

Vec RectExpr::size(const ParameterSet& params, const Eigen::VectorXd& x) const {
  Vec s = size_offset;
  for (const auto& t : terms) s += params.size(x, t.block);
  return s;
}

HyperRect RectExpr::evaluate(const ParameterSet& params, const Eigen::VectorXd& x) const {
  return HyperRect(center(params, x), size(params, x));
}

std::string to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kInclusion: return "inclusion";
    case ConstraintKind::kType1: return "type1";
    case ConstraintKind::kType2: return "type2";
    case ConstraintKind::kType3: return "type3";
    case ConstraintKind::kType4: return "type4";
    case ConstraintKind::kLowerBound: return "lower_bound";
  }
  return "unknown";
}

std::size_t ConvexProblem::count(ConstraintKind kind) const {
  std::size_t n = 0;
  for (const auto& c : constraints) n += c.kind == kind;
  return n;
}

std::size_t ConvexProblem::vertex_rows() const {
  std::size_t n = 0;
  for (const auto& c : constraints)
    if (std::holds_alternative<VertexInclusion>(c.body))
      n += std::size_t{1} << parameters.dimension();
  return n;
}

namespace {

LinearForm scaled_sum(const LinearForm& a, double ca, const LinearForm& b, double cb) {
  LinearForm out;
  for (const auto& [k, v] : a.terms) out.add(k, ca * v);
  for (const auto& [k, v] : b.terms) out.add(k, cb * v);
  out.constant = ca * a.constant + cb * b.constant;
  return out;
}

LinearForm center_form(const RectExpr& e, const ParameterSet& params, int k) {
  LinearForm f;
  f.constant = e.center_offset[k];
  for (const auto& t : e.terms) f.add(params.block(t.block).center_offset + static_cast<std::size_t>(k), t.sign);
  return f;
}

LinearForm size_form(const RectExpr& e, const ParameterSet& params, int k) {
  LinearForm f;
  f.constant = e.size_offset[k];
  for (const auto& t : e.terms) f.add(params.block(t.block).size_offset + static_cast<std::size_t>(k), 1.0);
  return f;
}

void check_expr(const RectExpr& e, const ParameterSet& params) {
  if (e.center_offset.size() != params.dimension() || e.size_offset.size() != params.dimension())
    throw_input("box expression dimension does not match the parameter set");
  for (const auto& t : e.terms)
    if (t.block >= params.num_blocks()) throw_input("box expression references an undeclared block");
}

}  // namespace

void append_membership_rows(solver::Problem& problem, const PredicateFunction& pf,
                            const std::vector<LinearForm>& point, std::size_t group) {
  if (static_cast<Eigen::Index>(point.size()) != pf.dimension()) throw_input("membership row dimension mismatch");
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          problem.add_row(solver::BallRow{point, s.center, s.radius}, group);
        } else if constexpr (std::is_same_v<T, RectRegion>) {
          for (std::size_t k = 0; k < point.size(); ++k) {
            const auto ki = static_cast<Eigen::Index>(k);
            const double half = 0.5 * s.rect.size()[ki];
            const double c = s.rect.center()[ki];
            LinearForm up = scaled_sum(point[k], -1.0, LinearForm{}, 0.0);
            up.constant += half + c;
            LinearForm down = point[k];
            down.constant += half - c;
            problem.add_row(solver::AffineRow{up}, group);
            problem.add_row(solver::AffineRow{down}, group);
          }
        } else {
          for (const auto& row : s.rows) {
            LinearForm f;
            f.constant = row.offset;
            for (std::size_t k = 0; k < point.size(); ++k) {
              const double a = row.normal[static_cast<Eigen::Index>(k)];
              if (a == 0.0) continue;
              f = scaled_sum(f, 1.0, point[k], -a);
            }
            problem.add_row(solver::AffineRow{f}, group);
          }
        }
      },
      pf.shape());
}

solver::Problem lower(const ConvexProblem& problem) {
  const auto& params = problem.parameters;
  const int n = params.dimension();
  solver::Problem sp;
  sp.num_variables = params.num_variables();
  for (auto b : problem.objective_blocks) {
    solver::InverseVolumeTerm term;
    for (int k = 0; k < n; ++k) term.sizes.push_back(params.block(b).size_offset + static_cast<std::size_t>(k));
    sp.objective.push_back(std::move(term));
  }
  for (const auto& c : problem.constraints) {
    const auto g = sp.add_group(c.label.empty() ? to_string(c.kind) : c.label);
    if (const auto* vi = std::get_if<VertexInclusion>(&c.body)) {
      check_expr(vi->rect, params);
      if (vi->target.dimension() != n) throw_input("inclusion target dimension mismatch");
      if (n > problem.vertex_budget)
        throw_input("dimension " + std::to_string(n) + " exceeds the vertex budget");
      const std::size_t count = std::size_t{1} << n;
      for (std::size_t j = 0; j < count; ++j) {
        const Vec sg = vertex_signs(n, j);
        std::vector<LinearForm> point;
        for (int k = 0; k < n; ++k)
          point.push_back(scaled_sum(center_form(vi->rect, params, k), 1.0,
                                     size_form(vi->rect, params, k), 0.5 * sg[k]));
        append_membership_rows(sp, vi->target, point, g);
      }
    } else if (const auto* bb = std::get_if<BoxInBox>(&c.body)) {
      check_expr(bb->inner, params);
      check_expr(bb->outer, params);
      for (int k = 0; k < n; ++k) {
        const LinearForm d = scaled_sum(center_form(bb->inner, params, k), 1.0,
                                        center_form(bb->outer, params, k), -1.0);
        const LinearForm slack = scaled_sum(size_form(bb->outer, params, k), 0.5,
                                            size_form(bb->inner, params, k), -0.5);
        sp.add_row(solver::AffineRow{scaled_sum(slack, 1.0, d, -1.0)}, g);
        sp.add_row(solver::AffineRow{scaled_sum(slack, 1.0, d, 1.0)}, g);
      }
    } else {
      const auto& lb = std::get<LowerBound>(c.body);
      if (lb.variable >= sp.num_variables) throw_input("lower bound on an undeclared variable");
      sp.add_row(solver::AffineRow{LinearForm{{{lb.variable, 1.0}}, -lb.bound}}, g);
    }
  }
  sp.initial_point = problem.initial_point;
  return sp;
}

double constraint_margin(const ConvexProblem& problem, const Constraint& c, const Eigen::VectorXd& x) {
  const auto& params = problem.parameters;
  if (const auto* vi = std::get_if<VertexInclusion>(&c.body))
    return superlevel_margin(vi->rect.center(params, x), vi->rect.size(params, x), vi->target,
                             problem.vertex_budget);
  if (const auto* bb = std::get_if<BoxInBox>(&c.body))
    return box_in_box_margin(bb->inner.center(params, x), bb->inner.size(params, x),
                             bb->outer.center(params, x), bb->outer.size(params, x));
  const auto& lb = std::get<LowerBound>(c.body);
  return x[static_cast<Eigen::Index>(lb.variable)] - lb.bound;
}

}  // namespace stldecomp
