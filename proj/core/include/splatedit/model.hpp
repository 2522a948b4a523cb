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

#include <cstddef>
#include <span>
#include <vector>

#include "splatedit/geometry.hpp"

namespace splatedit {

/// Scale of the flattened axis. Never stored in FlatGaussian; the axis it
/// belongs to is always rotation column 0.
inline constexpr double kFlatEpsilon = 1e-8;

/// Color coefficients in the spherical-harmonics layout of 3DGS scene files.
/// `rest` holds the higher-order bands channel-major, as stored on disk.
struct Color {
  Vec3 dc = Vec3::Zero();
  std::vector<double> rest;

  bool operator==(const Color&) const = default;
};

/// Non-geometric per-Gaussian record. Edits carry it through untouched.
struct Appearance {
  double opacity = 1.0;
  Color color;

  bool operator==(const Appearance&) const = default;
};

/// A Gaussian kernel with one scale fixed to kFlatEpsilon. Column 0 of the
/// rotation matrix is the flattened axis (the normal); columns 1 and 2 carry
/// the live scales.
struct FlatGaussian {
  Vec3 center = Vec3::Zero();
  Quat rotation = Quat::Identity();
  Vec2 scales = Vec2::Ones();
  Appearance appearance;

  Mat3 rotation_matrix() const { return rotation.toRotationMatrix(); }
  /// R S S^T R^T with S = diag(eps, s1, s2).
  Mat3 covariance() const;
};

/// Throws Error(non_finite / invalid_argument) naming `index` if `g` breaks
/// the FlatGaussian invariants.
void validate(const FlatGaussian& g, std::size_t index = 0);

/// Column 0 of the rotation matrix.
Vec3 gaussian_normal(const FlatGaussian& g);

struct SoupTriangle {
  Vec3 v0 = Vec3::Zero();
  Vec3 v1 = Vec3::Zero();
  Vec3 v2 = Vec3::Zero();

  Vec3 centroid() const { return triangle_centroid(v0, v1, v2); }
  bool operator==(const SoupTriangle&) const = default;
};

/// One disconnected triangle per Gaussian plus the parallel attribute list.
struct TriangleSoup {
  std::vector<SoupTriangle> triangles;
  std::vector<Appearance> attributes;

  std::size_t size() const { return triangles.size(); }
  bool empty() const { return triangles.empty(); }
  /// Throws Error(count_mismatch) if the two sequences disagree in length.
  void check_consistent() const;
};

SoupTriangle encode_triangle(const FlatGaussian& g);
/// Inverse of encode_triangle for the geometric part. Throws
/// Error(degenerate) or Error(non_finite) tagged with `index`.
FlatGaussian decode_triangle(const SoupTriangle& tri, std::size_t index = 0);

TriangleSoup encode_soup(std::span<const FlatGaussian> gaussians);
std::vector<FlatGaussian> decode_soup(const TriangleSoup& soup);

}  // namespace splatedit
