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

#include "splatedit/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "splatedit/error.hpp"

namespace splatedit {

namespace {

constexpr std::uint32_t kLeafSize = 8;

}  // namespace

CentroidIndex::CentroidIndex(const IndexedMesh& mesh) {
  if (mesh.faces.empty()) throw Error(Errc::empty_mesh, "cannot index a mesh without faces");
  if (mesh.faces.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(Errc::invalid_argument, "mesh too large for the centroid index");
  }
  points_.resize(mesh.faces.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    points_[f] = {face_centroid(mesh, f), static_cast<std::uint32_t>(f)};
  }
  nodes_.reserve(2 * points_.size() / kLeafSize + 1);
  build(0, static_cast<std::uint32_t>(points_.size()));
}

std::int32_t CentroidIndex::build(std::uint32_t begin, std::uint32_t end) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back({begin, end});
  if (end - begin <= kLeafSize) return id;

  Eigen::AlignedBox3d box;
  for (auto i = begin; i < end; ++i) box.extend(points_[i].position);
  int axis = 0;
  box.diagonal().maxCoeff(&axis);
  if (!(box.diagonal()[axis] > 0.0)) return id;  // all coincident: keep as leaf

  const auto mid = begin + (end - begin) / 2;
  std::nth_element(points_.begin() + begin, points_.begin() + mid, points_.begin() + end,
                   [axis](const Point& a, const Point& b) {
                     const double pa = a.position[axis];
                     const double pb = b.position[axis];
                     return pa < pb || (pa == pb && a.face_id < b.face_id);
                   });
  const double split = points_[mid].position[axis];
  const auto left = build(begin, mid);
  const auto right = build(mid, end);
  Node& node = nodes_[static_cast<std::size_t>(id)];
  node.axis = axis;
  node.split = split;
  node.left = left;
  node.right = right;
  return id;
}

NearestFace CentroidIndex::nearest(const Vec3& point) const {
  if (!point.allFinite()) throw Error(Errc::non_finite, "non-finite query point");

  double best_sq = std::numeric_limits<double>::infinity();
  std::uint32_t best_id = std::numeric_limits<std::uint32_t>::max();

  // Left subtrees hold coordinates <= split and right subtrees >= split, so
  // (q - split)^2 bounds the squared distance to anything across the plane.
  // Pruning only on a strict inequality keeps equal-distance candidates
  // reachable for the lowest-id tie rule.
  struct Pending {
    std::int32_t node;
    double bound_sq;
  };
  Pending stack[128];
  int top = 0;
  stack[top++] = {0, 0.0};
  while (top > 0) {
    const Pending item = stack[--top];
    if (item.bound_sq > best_sq) continue;
    const Node& node = nodes_[static_cast<std::size_t>(item.node)];
    if (node.axis < 0) {
      for (auto i = node.begin; i < node.end; ++i) {
        const double d = (points_[i].position - point).squaredNorm();
        if (d < best_sq || (d == best_sq && points_[i].face_id < best_id)) {
          best_sq = d;
          best_id = points_[i].face_id;
        }
      }
      continue;
    }
    const double diff = point[node.axis] - node.split;
    const double plane_sq = diff * diff;
    const auto near = diff < 0.0 ? node.left : node.right;
    const auto far = diff < 0.0 ? node.right : node.left;
    // Far side first on the stack so the near side is searched first.
    stack[top++] = {far, std::max(item.bound_sq, plane_sq)};
    stack[top++] = {near, item.bound_sq};
  }
  return {best_id, std::sqrt(best_sq)};
}

}  // namespace splatedit
