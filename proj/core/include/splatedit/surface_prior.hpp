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

#include <filesystem>
#include <iosfwd>
#include <variant>
#include <vector>

#include "splatedit/geometry.hpp"

namespace splatedit {

// Closed-form signed distance shapes. Negative inside, positive outside.

struct Sphere {
  Vec3 center = Vec3::Zero();
  double radius = 1.0;
};

struct Box {
  Vec3 center = Vec3::Zero();
  Vec3 half_extents = Vec3::Ones();
};

/// Half-space {x : normal . x <= offset}; `normal` is normalized on use.
struct Plane {
  Vec3 normal = Vec3::UnitZ();
  double offset = 0.0;
};

class AnalyticSdf;

struct Union {
  std::vector<AnalyticSdf> children;
};

struct Intersection {
  std::vector<AnalyticSdf> children;
};

class AnalyticSdf {
 public:
  using Shape = std::variant<Sphere, Box, Plane, Union, Intersection>;

  AnalyticSdf(Shape shape) : shape_(std::move(shape)) {}  // NOLINT(implicit)

  double operator()(const Vec3& x) const { return eval(x); }
  double eval(const Vec3& x) const;
  /// Analytic gradient. At non-smooth points (sphere center, box medial
  /// axes, union seams) an arbitrary one-sided choice is returned.
  Vec3 gradient(const Vec3& x) const;

  const Shape& shape() const { return shape_; }

 private:
  Shape shape_;
};

inline double sdf_eval(const AnalyticSdf& sdf, const Vec3& x) { return sdf.eval(x); }

/// Central differences with step h per axis. Throws Error(invalid_argument)
/// for h <= 0.
Vec3 finite_diff_grad(const AnalyticSdf& sdf, const Vec3& x, double h);

/// Parses the line-based scene description:
///
///   # comment
///   sphere <cx> <cy> <cz> <radius>
///   box <cx> <cy> <cz> <hx> <hy> <hz>
///   plane <nx> <ny> <nz> <offset>
///   union            (children follow, closed by `end`)
///   intersection     (children follow, closed by `end`)
///
/// Several top-level shapes are combined by union. Throws Error(malformed)
/// naming the line.
AnalyticSdf parse_sdf(std::istream& in);
AnalyticSdf load_sdf(const std::filesystem::path& path);

inline constexpr double kDefaultBeta = 100.0;

struct OpacityParams {
  double beta = kDefaultBeta;
  /// Multiply by 4 so the peak opacity is 1 instead of 1/4.
  bool normalize_peak = false;
};

/// exp(-b x) / (1 + exp(-b x))^2, evaluated without overflow for any finite
/// b x. Throws Error(invalid_argument) unless beta is positive and finite.
double bell_opacity(double distance, const OpacityParams& params);

/// Opacity of a point conditioned on its distance to the surface.
inline double surface_opacity(const AnalyticSdf& sdf, const Vec3& x, const OpacityParams& params) {
  return bell_opacity(sdf.eval(x), params);
}

/// |1 - |n . grad||. `grad` is used as given (not normalized). Throws
/// Error(invalid_argument) if |n| differs from 1 by more than 1e-6.
double normal_loss(const Vec3& normal, const Vec3& grad);

}  // namespace splatedit
