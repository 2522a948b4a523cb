// Copyright 2026 The Splatedit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace splatedit {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;

/// Relative area threshold below which a triangle counts as degenerate.
inline constexpr double kDegenerateAreaRatio = 1e-12;

inline bool all_finite(const Vec3& v) { return v.allFinite(); }

/// Scale-invariant degeneracy test: area < 1e-12 * (longest edge)^2.
/// Catches coincident vertices as well as collinear ones.
inline bool is_degenerate(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const double max_edge_sq =
      std::max({e1.squaredNorm(), e2.squaredNorm(), (c - b).squaredNorm()});
  if (!(max_edge_sq > 0.0)) return true;
  const double area = 0.5 * e1.cross(e2).norm();
  return !(area >= kDegenerateAreaRatio * max_edge_sq);
}

inline Vec3 triangle_centroid(const Vec3& a, const Vec3& b, const Vec3& c) {
  return (a + b + c) / 3.0;
}

inline double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

/// Rigid motion x -> rotation * x + translation.
struct RigidMotion {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 operator()(const Vec3& x) const { return rotation * x + translation; }
};

}  // namespace splatedit
