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

#include "splatedit/meshio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "ply.hpp"
#include "splatedit/error.hpp"
#include "splatedit/parallel.hpp"
#include "splatedit/random.hpp"
#include "text.hpp"

namespace splatedit {

void validate(const IndexedMesh& mesh) {
  if (mesh.faces.empty()) throw Error(Errc::empty_mesh, "mesh has no faces");
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    if (!mesh.vertices[i].allFinite()) {
      throw Error(Errc::non_finite, "non-finite coordinate at vertex " + std::to_string(i), i);
    }
  }
  const auto n = mesh.vertices.size();
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    for (auto idx : mesh.faces[f]) {
      if (idx >= n) {
        throw Error(Errc::index_out_of_range,
                    "face " + std::to_string(f) + " references vertex " + std::to_string(idx) +
                        " but the mesh has " + std::to_string(n) + " vertices",
                    f);
      }
    }
  }
}

MeshFace mesh_face(const IndexedMesh& mesh, std::size_t face_id) {
  if (face_id >= mesh.faces.size()) {
    throw Error(Errc::index_out_of_range,
                "face id " + std::to_string(face_id) + " out of range (" +
                    std::to_string(mesh.faces.size()) + " faces)",
                face_id);
  }
  const auto& f = mesh.faces[face_id];
  return {mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]], face_id};
}

Vec3 face_centroid(const IndexedMesh& mesh, std::size_t face_id) {
  const MeshFace f = mesh_face(mesh, face_id);
  return triangle_centroid(f.w0, f.w1, f.w2);
}

double bounding_diagonal(const IndexedMesh& mesh) {
  if (mesh.vertices.empty()) return 0.0;
  Eigen::AlignedBox3d box;
  for (const auto& v : mesh.vertices) box.extend(v);
  return box.diagonal().norm();
}

IndexedMesh transformed(const IndexedMesh& mesh, const RigidMotion& motion) {
  IndexedMesh out = mesh;
  for (auto& v : out.vertices) v = motion(v);
  return out;
}

// --- Wavefront text --------------------------------------------------------

namespace {

[[noreturn]] void obj_error(Errc code, std::size_t line, const std::string& what) {
  throw Error(code, "obj line " + std::to_string(line) + ": " + what, line);
}

}  // namespace

IndexedMesh read_obj(std::istream& in, const MeshReadOptions& options) {
  IndexedMesh mesh;
  std::vector<std::size_t> face_lines;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::uint32_t> polygon;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string keyword;
    if (!(words >> keyword)) continue;
    if (keyword == "v") {
      Vec3 p;
      std::string token;
      for (int k = 0; k < 3; ++k) {
        if (!(words >> token) || !text::parse_double(token, p[k])) {
          obj_error(Errc::malformed, line_no, "expected three vertex coordinates");
        }
      }
      mesh.vertices.push_back(p);
    } else if (keyword == "f") {
      polygon.clear();
      std::string token;
      while (words >> token) {
        // Only the position index matters: "a", "a/b", "a//c", "a/b/c".
        const auto slash = token.find('/');
        long long idx = 0;
        if (!text::parse_int(std::string_view(token).substr(0, slash), idx) || idx == 0) {
          obj_error(Errc::malformed, line_no, "bad face index '" + token + "'");
        }
        const long long resolved =
            idx > 0 ? idx - 1 : static_cast<long long>(mesh.vertices.size()) + idx;
        if (resolved < 0 || resolved > static_cast<long long>(UINT32_MAX)) {
          obj_error(Errc::index_out_of_range, line_no, "face index '" + token + "' out of range");
        }
        polygon.push_back(static_cast<std::uint32_t>(resolved));
      }
      if (polygon.size() < 3) obj_error(Errc::malformed, line_no, "face with fewer than 3 vertices");
      for (std::size_t k = 1; k + 1 < polygon.size(); ++k) {
        mesh.faces.push_back({polygon[0], polygon[k], polygon[k + 1]});
        face_lines.push_back(line_no);
      }
    }
    // Other statements (vn, vt, o, g, s, usemtl, mtllib, ...) carry nothing
    // we need.
  }
  if (in.bad()) throw Error(Errc::io_failure, "read error while parsing obj");
  if (mesh.faces.empty()) {
    if (options.allow_empty) return mesh;
    throw Error(Errc::empty_mesh, "obj contains no faces");
  }
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    for (auto idx : mesh.faces[f]) {
      if (idx >= mesh.vertices.size()) {
        obj_error(Errc::index_out_of_range, face_lines[f],
                  "face references vertex " + std::to_string(idx + 1) + " but only " +
                      std::to_string(mesh.vertices.size()) + " vertices exist");
      }
    }
  }
  validate(mesh);
  return mesh;
}

void write_obj(std::ostream& out, const IndexedMesh& mesh) {
  std::string buf;
  buf.reserve(mesh.vertices.size() * 64 + mesh.faces.size() * 32);
  for (const auto& v : mesh.vertices) {
    buf += "v ";
    buf += text::format_double(v.x());
    buf += ' ';
    buf += text::format_double(v.y());
    buf += ' ';
    buf += text::format_double(v.z());
    buf += '\n';
  }
  for (const auto& f : mesh.faces) {
    buf += "f " + std::to_string(f[0] + 1) + ' ' + std::to_string(f[1] + 1) + ' ' +
           std::to_string(f[2] + 1) + '\n';
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

// --- Binary PLY ------------------------------------------------------------

IndexedMesh read_ply_mesh(std::istream& in, const MeshReadOptions& options) {
  const ply::Header header = ply::read_header(in);
  const ply::Element* vertex = header.find("vertex");
  const ply::Element* face = header.find("face");
  if (!vertex) throw Error(Errc::malformed, "ply mesh has no vertex element");
  if (!face || face->count == 0) {
    if (!options.allow_empty) throw Error(Errc::empty_mesh, "ply mesh has no faces");
    if (!face) return IndexedMesh{};
  }

  std::array<std::size_t, 3> xyz{};
  for (int k = 0; k < 3; ++k) {
    auto idx = vertex->find(std::string(1, "xyz"[k]));
    if (!idx || vertex->properties[*idx].is_list) {
      throw Error(Errc::malformed, "ply vertex element lacks scalar property " + std::string(1, "xyz"[k]));
    }
    xyz[k] = *idx;
  }
  auto indices_prop = face->find("vertex_indices");
  if (!indices_prop) indices_prop = face->find("vertex_index");
  if (!indices_prop || !face->properties[*indices_prop].is_list) {
    throw Error(Errc::malformed, "ply face element lacks a vertex_indices list");
  }

  ply::Cursor cur = ply::Cursor::read_rest(in);
  IndexedMesh mesh;
  std::vector<double> row;
  std::vector<std::uint32_t> polygon;
  for (const auto& element : header.elements) {
    const bool is_vertex = &element == vertex;
    const bool is_face = &element == face;
    for (std::size_t r = 0; r < element.count; ++r) {
      if (is_vertex) row.assign(element.properties.size(), 0.0);
      for (std::size_t p = 0; p < element.properties.size(); ++p) {
        const auto& prop = element.properties[p];
        if (prop.is_list) {
          const std::size_t at = cur.offset();
          const auto n = cur.count(prop.count_type);
          if (is_face && p == *indices_prop) {
            polygon.clear();
            for (std::uint64_t k = 0; k < n; ++k) {
              const double idx = cur.scalar(prop.type);
              if (idx < 0 || idx > static_cast<double>(UINT32_MAX)) {
                throw Error(Errc::index_out_of_range,
                            "negative or oversized face index at byte offset " + std::to_string(at), at);
              }
              polygon.push_back(static_cast<std::uint32_t>(idx));
            }
            if (polygon.size() < 3) {
              throw Error(Errc::malformed,
                          "face " + std::to_string(r) + " has fewer than 3 vertices", r);
            }
            for (std::size_t k = 1; k + 1 < polygon.size(); ++k) {
              mesh.faces.push_back({polygon[0], polygon[k], polygon[k + 1]});
            }
          } else {
            cur.skip(static_cast<std::size_t>(n) * ply::type_size(prop.type));
          }
        } else if (is_vertex) {
          row[p] = cur.scalar(prop.type);
        } else {
          cur.skip(ply::type_size(prop.type));
        }
      }
      if (is_vertex) mesh.vertices.emplace_back(row[xyz[0]], row[xyz[1]], row[xyz[2]]);
    }
  }
  if (mesh.faces.empty() && options.allow_empty) return mesh;
  validate(mesh);
  return mesh;
}

void write_ply_mesh(std::ostream& out, const IndexedMesh& mesh) {
  std::string buf =
      "ply\nformat binary_little_endian 1.0\nelement vertex " + std::to_string(mesh.vertices.size()) +
      "\nproperty double x\nproperty double y\nproperty double z\nelement face " +
      std::to_string(mesh.faces.size()) + "\nproperty list uchar uint vertex_indices\nend_header\n";
  buf.reserve(buf.size() + mesh.vertices.size() * 24 + mesh.faces.size() * 13);
  for (const auto& v : mesh.vertices) {
    ply::put(buf, v.x());
    ply::put(buf, v.y());
    ply::put(buf, v.z());
  }
  for (const auto& f : mesh.faces) {
    ply::put(buf, std::uint8_t{3});
    for (auto idx : f) ply::put(buf, idx);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

namespace {

enum class MeshFormat { obj, ply };

MeshFormat format_for(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".obj") return MeshFormat::obj;
  if (ext == ".ply") return MeshFormat::ply;
  throw Error(Errc::invalid_argument,
              "unsupported mesh extension '" + ext + "' (expected .obj or .ply): " + path.string());
}

}  // namespace

IndexedMesh load_mesh(const std::filesystem::path& path, const MeshReadOptions& options) {
  const MeshFormat format = format_for(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_failure, "cannot open mesh file " + path.string());
  try {
    return format == MeshFormat::obj ? read_obj(in, options) : read_ply_mesh(in, options);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what(), e.index());
  }
}

void save_mesh(const IndexedMesh& mesh, const std::filesystem::path& path) {
  const MeshFormat format = format_for(path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_failure, "cannot open " + path.string() + " for writing");
  if (format == MeshFormat::obj) {
    write_obj(out, mesh);
  } else {
    write_ply_mesh(out, mesh);
  }
  out.flush();
  if (!out) throw Error(Errc::io_failure, "write failed for " + path.string());
}

// --- Edit pairs ------------------------------------------------------------

EditPair validate_edit_pair(const IndexedMesh& original, const IndexedMesh& edited) {
  validate(original);
  validate(edited);
  if (original.faces.size() != edited.faces.size()) {
    throw Error(Errc::count_mismatch,
                "face count mismatch: original has " + std::to_string(original.faces.size()) +
                    " faces, edited has " + std::to_string(edited.faces.size()) +
                    " (edits must keep the face list; only vertex positions may change)");
  }
  for (std::size_t f = 0; f < original.faces.size(); ++f) {
    if (original.faces[f] != edited.faces[f]) {
      throw Error(Errc::topology_mismatch,
                  "face " + std::to_string(f) +
                      " has different vertex indices in the edited mesh (faces must not be "
                      "reordered or re-indexed)",
                  f);
    }
  }
  return EditPair(original, edited);
}

// --- Surface sampling ------------------------------------------------------

std::vector<SurfaceSample> sample_surface(const IndexedMesh& mesh, std::size_t n,
                                          std::uint64_t seed, std::size_t threads) {
  validate(mesh);
  std::vector<double> cdf(mesh.faces.size());
  double total = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const MeshFace face = mesh_face(mesh, f);
    total += triangle_area(face.w0, face.w1, face.w2);
    cdf[f] = total;
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw Error(Errc::degenerate, "mesh has zero total area; cannot sample");
  }

  std::vector<SurfaceSample> out(n);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng(seed, i);
      const double pick = rng.uniform() * total;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), pick);
      // Never land on a trailing zero-area face.
      if (it == cdf.end()) it = std::lower_bound(cdf.begin(), cdf.end(), total);
      const auto face_id = static_cast<std::size_t>(it - cdf.begin());
      const MeshFace face = mesh_face(mesh, face_id);

      const double root_a = std::sqrt(rng.uniform());
      const double b = rng.uniform();
      const double u = 1.0 - root_a;
      const double v = b * root_a;
      const double w = 1.0 - u - v;
      // Barycentric (u, v, w) applied relative to w0.
      out[i].point = face.w0 + v * (face.w1 - face.w0) + w * (face.w2 - face.w0);
      out[i].face_id = face_id;
      out[i].normal = (face.w1 - face.w0).cross(face.w2 - face.w0).normalized();
    }
  });
  return out;
}

}  // namespace splatedit
