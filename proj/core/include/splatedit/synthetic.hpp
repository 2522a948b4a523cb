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

// Synthetic meshes, deformations and soups for benchmarks and tests.

#include <array>
#include <cstddef>
#include <cstdint>

#include "splatedit/meshio.hpp"
#include "splatedit/model.hpp"

namespace splatedit::synthetic {

/// Face counts of the mesh-resolution sweep reproduced by the bench command.
inline constexpr std::array<std::size_t, 5> kResolutionSweepFaces = {120778, 512304, 1188712,
                                                                      2101122, 3334984};

/// Wavy height field over [-1, 1]^2 triangulated as an nx x ny quad grid,
/// with nx, ny chosen so the face count is close to `target_faces`.
IndexedMesh wave_grid(std::size_t target_faces);

/// Smooth non-rigid edit: twist about the z axis growing with y plus a bend.
IndexedMesh twist_bend(const IndexedMesh& mesh, double strength = 0.5);

/// One flat Gaussian per area-weighted surface sample, tangent to its face
/// with a random in-plane orientation, then encoded as a soup.
TriangleSoup surface_soup(const IndexedMesh& mesh, std::size_t n, std::uint64_t seed);

struct EditTiming {
  std::size_t vertices = 0;
  std::size_t faces = 0;
  double seconds = 0.0;
  std::size_t flagged = 0;
};

/// Wall-clock time of one full edit: pair validation, index build and
/// propagation of `soup`.
EditTiming time_edit(const TriangleSoup& soup, const IndexedMesh& original,
                     const IndexedMesh& edited, std::size_t threads);

}  // namespace splatedit::synthetic
