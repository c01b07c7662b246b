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

#include <Eigen/Dense>

namespace stldecomp {

using Vec = Eigen::VectorXd;

/// Axis-aligned hyper-rectangle given by its center and full side lengths.
///
/// The box is the product of intervals [center[k] - size[k]/2,
/// center[k] + size[k]/2]. Every side length is strictly positive; the
/// constructor rejects anything else with InputError.
class HyperRect {
 public:
  HyperRect(Vec center, Vec size);

  const Vec& center() const { return center_; }
  const Vec& size() const { return size_; }
  Eigen::Index dimension() const { return center_.size(); }

  Vec lower() const { return center_ - 0.5 * size_; }
  Vec upper() const { return center_ + 0.5 * size_; }
  double volume() const { return size_.prod(); }
  bool contains(const Vec& z, double tol = 0.0) const;

  friend bool operator==(const HyperRect& a, const HyperRect& b) {
    return a.center_ == b.center_ && a.size_ == b.size_;
  }

 private:
  Vec center_;
  Vec size_;
};

}  // namespace stldecomp
