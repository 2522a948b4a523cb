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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "splatedit/geometry.hpp"
#include "splatedit/model.hpp"

namespace splatedit {

/// Zeroth spherical-harmonic band constant, sqrt(1 / (4 pi)).
inline constexpr double kShC0 = 0.28209479177387814;

/// Footprints are cut off beyond this Mahalanobis distance.
inline constexpr double kFootprintCutoff = 3.0;

/// Orthographic camera. Orientation columns are the image right axis, the
/// image up axis and the viewing direction (into the scene).
struct OrthoCamera {
  Vec3 position = Vec3::Zero();
  Mat3 orientation = Mat3::Identity();
  double view_width = 1.0;
  double view_height = 1.0;
  std::size_t image_width = 64;
  std::size_t image_height = 64;

  /// Camera at `eye` looking at `target`; `up` need not be orthogonal.
  static OrthoCamera look_at(const Vec3& eye, const Vec3& target, const Vec3& up,
                             double view_width, double view_height, std::size_t image_width,
                             std::size_t image_height);
};

/// Throws Error(invalid_argument) for non-positive extents or a
/// non-orthonormal orientation.
void validate(const OrthoCamera& camera);

using Rgb = Eigen::Vector3d;

struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  /// Row-major, top row first.
  std::vector<Rgb> pixels;

  Image() = default;
  Image(std::size_t w, std::size_t h, const Rgb& fill = Rgb::Zero())
      : width(w), height(h), pixels(w * h, fill) {}

  Rgb& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
  const Rgb& at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
};

/// DC coefficient to display color, clamped to [0, 1].
Rgb dc_to_rgb(const Vec3& f_dc);

struct RenderOptions {
  std::size_t threads = 1;
};

/// Back-to-front over-compositing of the projected flat Gaussians. Output is
/// independent of the thread count.
Image render(std::span<const FlatGaussian> gaussians, const OrthoCamera& camera,
             const Rgb& background, const RenderOptions& options = {});

/// Binary PPM (P6, maxval 255). Channels are clamped then rounded.
void write_ppm(std::ostream& out, const Image& image);
Image read_ppm(std::istream& in);
void write_image(const Image& image, const std::filesystem::path& path);
Image read_image(const std::filesystem::path& path);

}  // namespace splatedit
