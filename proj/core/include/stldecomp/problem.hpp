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

// Decision variables and constraints of the decomposition program, expressed
// over parametric boxes. `lower` turns a ConvexProblem into the row form the
// barrier solver consumes.

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "stldecomp/geometry.hpp"
#include "stldecomp/solver.hpp"
#include "stldecomp/stl.hpp"

namespace stldecomp {

/// One parametric box eta = (p, nu) of a sub-task on a directed edge.
struct ParameterBlock {
  std::size_t family = 0;  // decomposed conjunct this block belongs to
  Edge edge;               // directed (r, s) along the path
  std::size_t center_offset = 0;
  std::size_t size_offset = 0;
};

/// Ordered decision vector: block b owns p at [center_offset, +n) and nu at
/// [size_offset, +n), blocks laid out back to back in creation order.
class ParameterSet {
 public:
  explicit ParameterSet(int dimension = 0) : dimension_(dimension) {}

  std::size_t add_block(std::size_t family, Edge edge);

  int dimension() const { return dimension_; }
  const std::vector<ParameterBlock>& blocks() const { return blocks_; }
  const ParameterBlock& block(std::size_t b) const { return blocks_.at(b); }
  std::size_t num_blocks() const { return blocks_.size(); }
  std::size_t num_variables() const { return 2 * blocks_.size() * dimension_; }

  Vec center(const Eigen::VectorXd& x, std::size_t b) const;
  Vec size(const Eigen::VectorXd& x, std::size_t b) const;
  void set(Eigen::VectorXd& x, std::size_t b, const Vec& center, const Vec& size) const;

 private:
  int dimension_;
  std::vector<ParameterBlock> blocks_;
};

/// Affine box expression: the Minkowski sum of signed parametric blocks plus a
/// constant box. A sign of -1 reflects the block through the origin (center
/// negated, sizes unchanged), which is how a block is read from the opposite
/// edge orientation.
struct RectExpr {
  struct Term {
    std::size_t block = 0;
    double sign = 1.0;
  };
  std::vector<Term> terms;
  Vec center_offset;
  Vec size_offset;

  static RectExpr zero(int dimension);
  static RectExpr constant(const HyperRect& rect);
  static RectExpr block(std::size_t b, int dimension, double sign = 1.0);

  bool is_constant() const { return terms.empty(); }
  RectExpr negated() const;
  RectExpr& operator+=(const RectExpr& other);
  friend RectExpr operator+(RectExpr a, const RectExpr& b) { return a += b; }

  Vec center(const ParameterSet& params, const Eigen::VectorXd& x) const;
  Vec size(const ParameterSet& params, const Eigen::VectorXd& x) const;
  /// Evaluated box; throws InputError if some side is not positive.
  HyperRect evaluate(const ParameterSet& params, const Eigen::VectorXd& x) const;
};

enum class ConstraintKind { kInclusion, kType1, kType2, kType3, kType4, kLowerBound };

std::string to_string(ConstraintKind kind);

/// Every vertex of `rect` lies in {target >= 0}.
struct VertexInclusion {
  RectExpr rect;
  PredicateFunction target;
};

/// inner is contained in outer.
struct BoxInBox {
  RectExpr inner;
  RectExpr outer;
};

/// x[variable] >= bound.
struct LowerBound {
  std::size_t variable = 0;
  double bound = 0.0;
};

struct Constraint {
  std::variant<VertexInclusion, BoxInBox, LowerBound> body;
  ConstraintKind kind = ConstraintKind::kInclusion;
  std::string label;
};

struct ConvexProblem {
  ParameterSet parameters;
  /// Blocks contributing 1 / prod(nu) to the objective.
  std::vector<std::size_t> objective_blocks;
  std::vector<Constraint> constraints;
  Eigen::VectorXd initial_point;
  int vertex_budget = kDefaultVertexBudget;

  std::size_t count(ConstraintKind kind) const;
  /// 2^n per vertex-inclusion constraint.
  std::size_t vertex_rows() const;
};

/// Rows stating that the affine point lies in {pf >= 0}: one ball row, 2n
/// affine rows for a box, one affine row per halfspace.
void append_membership_rows(solver::Problem& problem, const PredicateFunction& pf,
                            const std::vector<solver::LinearForm>& point, std::size_t group);

/// Row form for the barrier solver; constraint c becomes solver group c.
solver::Problem lower(const ConvexProblem& problem);

/// Geometric margin of one constraint at x: superlevel margin for vertex
/// inclusions, box-in-box margin, or x - bound.
double constraint_margin(const ConvexProblem& problem, const Constraint& c,
                         const Eigen::VectorXd& x);

}  // namespace stldecomp
