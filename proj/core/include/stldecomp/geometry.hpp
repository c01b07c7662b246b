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

#include <span>
#include <vector>

#include "stldecomp/hyper_rect.hpp"
#include "stldecomp/predicate.hpp"

namespace stldecomp {

/// Largest dimension for which the 2^n vertex set is enumerated.
inline constexpr int kDefaultVertexBudget = 16;

/// Sign pattern of vertex `index` in binary-counting order: bit (n-1-k) of
/// `index` selects +size[k]/2 (set) or -size[k]/2 (clear).
Vec vertex_signs(Eigen::Index n, std::size_t index);

/// The 2^n vertices of `rect` in binary-counting order on the sign pattern,
/// so p=[0,0], size=[2,2] gives (-1,-1), (-1,1), (1,-1), (1,1).
/// Throws InputError when n exceeds `vertex_budget`.
std::vector<Vec> vertices(const HyperRect& rect, int vertex_budget = kDefaultVertexBudget);

/// Minkowski sum of boxes: centers add and side lengths add.
HyperRect minkowski_sum(std::span<const HyperRect> rects);
HyperRect minkowski_sum(const HyperRect& a, const HyperRect& b);

/// Point reflection through the origin: center -> -center, sizes unchanged.
HyperRect negate(const HyperRect& rect);

/// min over vertices v of h(v). For concave h, a non-negative margin means
/// the whole box lies in the superlevel set {h >= 0}.
double superlevel_margin(const HyperRect& rect, const PredicateFunction& pf,
                         int vertex_budget = kDefaultVertexBudget);

/// Same as above on raw center/size vectors. Sizes may be zero or negative
/// here, which the audit of unsolved parameter vectors needs.
double superlevel_margin(const Vec& center, const Vec& size, const PredicateFunction& pf,
                         int vertex_budget = kDefaultVertexBudget);

/// min_k (outer.size[k]/2 - |inner.center[k] - outer.center[k]| - inner.size[k]/2).
/// Non-negative iff inner is contained in outer.
double box_in_box_margin(const HyperRect& inner, const HyperRect& outer);
double box_in_box_margin(const Vec& inner_center, const Vec& inner_size,
                         const Vec& outer_center, const Vec& outer_size);

/// A box contained in the superlevel set of `pf`. Rect predicates return their
/// own box, balls the inscribed cube of half-width radius/sqrt(n), and bounded
/// polytopes the maximum-volume inscribed box. Throws InputError for
/// unbounded or empty polytopes.
HyperRect inscribe_rect(const PredicateFunction& pf);

/// Whether the superlevel sets of `a` and `b` share a point (closed sets, so
/// touching counts as intersecting).
bool regions_intersect(const PredicateFunction& a, const PredicateFunction& b);

}  // namespace stldecomp
