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

#include "splatedit/propagate.hpp"

#include <ostream>
#include <string>

#include "splatedit/error.hpp"
#include "splatedit/parallel.hpp"
#include "text.hpp"

namespace splatedit {

FaceFrame face_frame(const MeshFace& face) {
  if (!face.w0.allFinite() || !face.w1.allFinite() || !face.w2.allFinite()) {
    throw Error(Errc::non_finite, "non-finite vertex on face " + std::to_string(face.face_id),
                face.face_id);
  }
  if (is_degenerate(face.w0, face.w1, face.w2)) {
    throw Error(Errc::degenerate, "degenerate face " + std::to_string(face.face_id), face.face_id);
  }
  const Vec3 e1 = face.w1 - face.w0;
  const Vec3 e2 = face.w2 - face.w0;
  FaceFrame frame;
  frame.basis.col(0) = e1.normalized();
  frame.basis.col(1) = e1.cross(e2).normalized();
  frame.basis.col(2) = frame.basis.col(0).cross(frame.basis.col(1));
  frame.origin = face.w0;
  return frame;
}

EditTransform edit_transform(const MeshFace& original, const MeshFace& edited) {
  const FaceFrame from = face_frame(original);
  const FaceFrame to = face_frame(edited);
  return {to.basis * from.basis.transpose(), from.origin, to.origin};
}

SoupTriangle apply_edit(const SoupTriangle& triangle, const EditTransform& xf) {
  return {xf(triangle.v0), xf(triangle.v1), xf(triangle.v2)};
}

std::size_t AssociationReport::flagged_count() const {
  std::size_t n = 0;
  for (const auto& row : rows) n += row.flag != AssociationFlag::ok;
  return n;
}

namespace {

const char* flag_name(AssociationFlag flag) {
  switch (flag) {
    case AssociationFlag::ok:
      return "ok";
    case AssociationFlag::degenerate_original:
      return "degenerate_original";
    case AssociationFlag::degenerate_edited:
      return "degenerate_edited";
  }
  return "?";
}

}  // namespace

void AssociationReport::write_summary(std::ostream& out) const {
  double max_distance = 0.0;
  double sum_distance = 0.0;
  for (const auto& row : rows) {
    max_distance = std::max(max_distance, row.distance);
    sum_distance += row.distance;
  }
  out << "triangles: " << rows.size() << '\n'
      << "flagged: " << flagged_count() << '\n'
      << "mean association distance: "
      << text::format_double(rows.empty() ? 0.0 : sum_distance / static_cast<double>(rows.size()))
      << '\n'
      << "max association distance: " << text::format_double(max_distance) << '\n';
  for (const auto& row : rows) {
    if (row.flag != AssociationFlag::ok) {
      out << "  triangle " << row.triangle << " -> face " << row.face << ": " << flag_name(row.flag)
          << '\n';
    }
  }
}

void AssociationReport::write_table(std::ostream& out) const {
  out << "triangle\tface\tdistance\tflag\n";
  for (const auto& row : rows) {
    out << row.triangle << '\t' << row.face << '\t' << text::format_double(row.distance) << '\t'
        << flag_name(row.flag) << '\n';
  }
}

PropagationResult propagate_soup(const TriangleSoup& soup, const EditPair& pair,
                                 const CentroidIndex& index, const PropagateOptions& options) {
  soup.check_consistent();
  const IndexedMesh& original = pair.original();
  const IndexedMesh& edited = pair.edited();
  if (index.face_count() != original.face_count()) {
    throw Error(Errc::count_mismatch, "centroid index was built over a different mesh (" +
                                          std::to_string(index.face_count()) + " vs " +
                                          std::to_string(original.face_count()) + " faces)");
  }

  PropagationResult result;
  result.soup.triangles.resize(soup.size());
  result.soup.attributes = soup.attributes;
  result.report.rows.resize(soup.size());

  parallel_for(soup.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const SoupTriangle& tri = soup.triangles[i];
      const NearestFace hit = index.nearest(tri.centroid());
      Association& row = result.report.rows[i];
      row = {i, hit.face_id, hit.distance, AssociationFlag::ok};

      const MeshFace from = mesh_face(original, hit.face_id);
      const MeshFace to = mesh_face(edited, hit.face_id);
      if (is_degenerate(from.w0, from.w1, from.w2)) {
        row.flag = AssociationFlag::degenerate_original;
      } else if (is_degenerate(to.w0, to.w1, to.w2)) {
        row.flag = AssociationFlag::degenerate_edited;
      }
      result.soup.triangles[i] =
          row.flag == AssociationFlag::ok ? apply_edit(tri, edit_transform(from, to)) : tri;
    }
  });
  return result;
}

}  // namespace splatedit
