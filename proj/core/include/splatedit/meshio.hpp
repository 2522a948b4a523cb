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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "splatedit/geometry.hpp"

namespace splatedit {

using FaceIndices = std::array<std::uint32_t, 3>;

/// Shared vertex list plus triangle index list, winding as authored.
struct IndexedMesh {
  std::vector<Vec3> vertices;
  std::vector<FaceIndices> faces;

  std::size_t face_count() const { return faces.size(); }
  std::size_t vertex_count() const { return vertices.size(); }
};

struct MeshFace {
  Vec3 w0;
  Vec3 w1;
  Vec3 w2;
  std::size_t face_id = 0;
};

/// Throws Error(empty_mesh / index_out_of_range / non_finite).
void validate(const IndexedMesh& mesh);

/// Throws Error(index_out_of_range) for a bad id.
MeshFace mesh_face(const IndexedMesh& mesh, std::size_t face_id);
Vec3 face_centroid(const IndexedMesh& mesh, std::size_t face_id);

/// Axis-aligned bounding box diagonal length; 0 for an empty mesh.
double bounding_diagonal(const IndexedMesh& mesh);

IndexedMesh transformed(const IndexedMesh& mesh, const RigidMotion& motion);

struct MeshReadOptions {
  /// Accept files without faces (used for empty triangle soups).
  bool allow_empty = false;
};

// Text format: Wavefront-style `v x y z` and `f a b c ...` statements with
// 1-based (or negative, relative) indices. Polygons are fan-triangulated.
IndexedMesh read_obj(std::istream& in, const MeshReadOptions& options = {});
void write_obj(std::ostream& out, const IndexedMesh& mesh);

// Binary format: little-endian PLY with `vertex` (float or double x/y/z) and
// `face` (list of vertex indices) elements. Written with double coordinates
// so that save/load is exact.
IndexedMesh read_ply_mesh(std::istream& in, const MeshReadOptions& options = {});
void write_ply_mesh(std::ostream& out, const IndexedMesh& mesh);

/// Dispatches on the extension: `.obj` (text) or `.ply` (binary).
IndexedMesh load_mesh(const std::filesystem::path& path, const MeshReadOptions& options = {});
void save_mesh(const IndexedMesh& mesh, const std::filesystem::path& path);

/// Proof that two meshes share their face list position-wise, so face i of
/// one corresponds to face i of the other. Only obtainable from
/// validate_edit_pair. Holds references; both meshes must outlive it.
class EditPair {
 public:
  const IndexedMesh& original() const { return *original_; }
  const IndexedMesh& edited() const { return *edited_; }

 private:
  friend EditPair validate_edit_pair(const IndexedMesh&, const IndexedMesh&);
  EditPair(const IndexedMesh& original, const IndexedMesh& edited)
      : original_(&original), edited_(&edited) {}

  const IndexedMesh* original_;
  const IndexedMesh* edited_;
};

/// Both meshes are validated, then required to have equal face counts and
/// identical index triples. Throws Error(count_mismatch) or
/// Error(topology_mismatch) with the first differing face id.
EditPair validate_edit_pair(const IndexedMesh& original, const IndexedMesh& edited);

inline constexpr std::size_t kDefaultSampleCount = 100000;

struct SurfaceSample {
  Vec3 point;
  std::size_t face_id = 0;
  Vec3 normal;
};

/// Area-weighted uniform sampling. Deterministic for a given seed and
/// independent of `threads`. Throws Error(degenerate) on a zero-area mesh.
std::vector<SurfaceSample> sample_surface(const IndexedMesh& mesh, std::size_t n,
                                          std::uint64_t seed, std::size_t threads = 1);

}  // namespace splatedit
