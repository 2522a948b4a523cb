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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "splatedit/model.hpp"

namespace splatedit {

/// Scenes whose smallest/middle scale ratio exceeds this are reported as
/// poorly flat when loaded.
inline constexpr double kPoorFlatnessRatio = 0.1;

/// Opacities are clamped to [kOpacityClamp, 1 - kOpacityClamp] before the
/// logit is taken on save.
inline constexpr double kOpacityClamp = 1e-6;

struct FlattenReport {
  /// Indices of Gaussians whose dropped scale was not negligible.
  std::vector<std::size_t> poorly_flat;
  double max_ratio = 0.0;
};

struct LoadedScene {
  std::vector<FlatGaussian> gaussians;
  FlattenReport flatten;
};

// Scene files follow the common 3DGS point-cloud layout: binary
// little-endian PLY with float properties
//   x y z nx ny nz f_dc_0..2 f_rest_0..K-1 opacity scale_0..2 rot_0..3
// where opacity is a logit, scales are natural logs and rot is a
// scalar-first, possibly unnormalized quaternion. On load the smallest of
// the three scales is dropped and the rotation columns are cycled so that
// the flattened axis becomes column 0.
LoadedScene read_scene(std::istream& in);
/// All Gaussians must carry the same number of higher-order coefficients.
void write_scene(std::ostream& out, std::span<const FlatGaussian> gaussians);

LoadedScene load_scene(const std::filesystem::path& path);
void save_scene(std::span<const FlatGaussian> gaussians, const std::filesystem::path& path);

/// Flattens one Gaussian given its three scales and a unit quaternion.
/// Returns the flat Gaussian and the smallest/middle scale ratio.
std::pair<FlatGaussian, double> flatten_gaussian(const Vec3& center, const Quat& rotation,
                                                 const Vec3& scales);

// Triangle soups are stored as a mesh file (`.obj` or `.ply`) with 3N
// vertices and faces (3i, 3i+1, 3i+2), plus a tab-separated attribute
// sidecar at sidecar_path(mesh_path):
//   index  opacity  f_dc_0  f_dc_1  f_dc_2  f_rest_0 ...
std::filesystem::path sidecar_path(const std::filesystem::path& soup_path);

void write_sidecar(std::ostream& out, std::span<const Appearance> attributes);
std::vector<Appearance> read_sidecar(std::istream& in);

void save_soup(const TriangleSoup& soup, const std::filesystem::path& path);
/// Throws Error(shared_vertices) if the geometry is not a disjoint soup and
/// Error(count_mismatch) if the sidecar and the geometry disagree.
TriangleSoup load_soup(const std::filesystem::path& path);

}  // namespace splatedit
