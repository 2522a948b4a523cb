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
#include <iosfwd>
#include <vector>

#include "splatedit/geometry.hpp"
#include "splatedit/meshio.hpp"
#include "splatedit/model.hpp"
#include "splatedit/spatial.hpp"

namespace splatedit {

/// Right-handed orthonormal basis attached to a mesh face: column 0 is the
/// first edge direction, column 1 the face normal, column 2 their cross
/// product. `origin` is the face's first vertex.
struct FaceFrame {
  Mat3 basis = Mat3::Identity();
  Vec3 origin = Vec3::Zero();
};

/// Maps a point attached to one face onto the corresponding edited face:
/// x -> rotation * (x - from_origin) + to_origin.
struct EditTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 from_origin = Vec3::Zero();
  Vec3 to_origin = Vec3::Zero();

  Vec3 operator()(const Vec3& x) const { return rotation * (x - from_origin) + to_origin; }

  static EditTransform identity() { return {}; }
};

/// Throws Error(degenerate) for collinear or coincident vertices.
FaceFrame face_frame(const MeshFace& face);

/// rotation = U' U^T. Throws Error(degenerate) if either face is degenerate.
EditTransform edit_transform(const MeshFace& original, const MeshFace& edited);

SoupTriangle apply_edit(const SoupTriangle& triangle, const EditTransform& xf);

enum class AssociationFlag {
  ok,
  /// The associated face could not carry a frame; the triangle was left as is.
  degenerate_original,
  degenerate_edited,
};

struct Association {
  std::size_t triangle = 0;
  std::size_t face = 0;
  double distance = 0.0;
  AssociationFlag flag = AssociationFlag::ok;
};

/// One row per soup triangle, in soup order.
struct AssociationReport {
  std::vector<Association> rows;

  std::size_t flagged_count() const;
  /// Human-readable multi-line summary.
  void write_summary(std::ostream& out) const;
  /// Tab-separated table: triangle, face, distance, flag.
  void write_table(std::ostream& out) const;
};

struct PropagationResult {
  TriangleSoup soup;
  AssociationReport report;
};

struct PropagateOptions {
  std::size_t threads = 1;
};

/// Moves every soup triangle with the transform of the original face whose
/// centroid is nearest to the triangle's centroid. `index` must have been
/// built over `pair.original()`. Output order and attributes match the
/// input; results do not depend on the thread count.
PropagationResult propagate_soup(const TriangleSoup& soup, const EditPair& pair,
                                 const CentroidIndex& index, const PropagateOptions& options = {});

}  // namespace splatedit
