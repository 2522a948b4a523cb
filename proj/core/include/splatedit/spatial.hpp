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
#include <vector>

#include "splatedit/geometry.hpp"
#include "splatedit/meshio.hpp"

namespace splatedit {

struct NearestFace {
  std::size_t face_id = 0;
  /// Euclidean (not squared) distance to the face centroid.
  double distance = 0.0;
};

/// Static k-d tree over the face centroids of one mesh. Queries return
/// exactly what a linear scan would, with ties going to the lowest face id.
class CentroidIndex {
 public:
  /// Throws Error(empty_mesh) when the mesh has no faces.
  explicit CentroidIndex(const IndexedMesh& mesh);

  /// Throws Error(non_finite) for a non-finite query point.
  NearestFace nearest(const Vec3& point) const;

  std::size_t face_count() const { return points_.size(); }

 private:
  struct Point {
    Vec3 position;
    std::uint32_t face_id;
  };
  struct Node {
    // Leaves: [begin, end) into points_. Interior: children at left/right.
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double split = 0.0;
    int axis = -1;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end);

  std::vector<Point> points_;
  std::vector<Node> nodes_;
};

inline CentroidIndex build_index(const IndexedMesh& mesh) { return CentroidIndex(mesh); }

inline NearestFace nearest_face(const CentroidIndex& index, const Vec3& point) {
  return index.nearest(point);
}

}  // namespace splatedit
