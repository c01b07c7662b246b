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

#pragma once

#include <variant>
#include <vector>

#include "stldecomp/hyper_rect.hpp"

namespace stldecomp {

/// h(z) = radius - ||z - center||.
struct Ball {
  Vec center;
  double radius = 1.0;
};

/// h(z) = min_k (size[k]/2 - |z[k] - center[k]|).
struct RectRegion {
  HyperRect rect;
};

/// One row of a halfspace description: normal . z <= offset.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

/// h(z) = min over rows of (offset - normal . z).
struct Polytope {
  std::vector<Halfspace> rows;
};

/// A concave predicate function over an absolute state x_i or a relative
/// state e_ij = x_j - x_i. The predicate holds where h(z) >= 0.
class PredicateFunction {
 public:
  using Variant = std::variant<Ball, RectRegion, Polytope>;

  // Validating constructors; each throws InputError on a bad shape.
  PredicateFunction(Ball ball);
  PredicateFunction(RectRegion rect);
  PredicateFunction(HyperRect rect) : PredicateFunction(RectRegion{std::move(rect)}) {}
  PredicateFunction(Polytope polytope);

  const Variant& shape() const { return shape_; }
  Eigen::Index dimension() const;

  bool is_ball() const { return std::holds_alternative<Ball>(shape_); }
  bool is_rect() const { return std::holds_alternative<RectRegion>(shape_); }
  bool is_polytope() const { return std::holds_alternative<Polytope>(shape_); }

  /// The same set seen from the opposite edge orientation: {-z : h(z) >= 0}.
  PredicateFunction negated() const;

 private:
  Variant shape_;
};

/// Evaluates h(z). Throws InputError on a dimension mismatch.
double eval_predicate(const PredicateFunction& pf, const Vec& z);

}  // namespace stldecomp
