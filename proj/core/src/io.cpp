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

#include "splatedit/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "ply.hpp"
#include "splatedit/error.hpp"
#include "splatedit/meshio.hpp"
#include "text.hpp"

namespace splatedit {

namespace {

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double logit(double p) { return std::log(p) - std::log1p(-p); }

std::string join_indices(const std::vector<std::size_t>& indices) {
  std::string out;
  const std::size_t shown = std::min<std::size_t>(indices.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) out += ", ";
    out += std::to_string(indices[i]);
  }
  if (indices.size() > shown) out += ", ... (" + std::to_string(indices.size()) + " total)";
  return out;
}

}  // namespace

std::pair<FlatGaussian, double> flatten_gaussian(const Vec3& center, const Quat& rotation,
                                                 const Vec3& scales) {
  int smallest = 0;
  for (int k = 1; k < 3; ++k) {
    if (scales[k] < scales[smallest]) smallest = k;
  }
  // Cyclic permutations keep the determinant at +1.
  const int a = (smallest + 1) % 3;
  const int b = (smallest + 2) % 3;
  const Mat3 r = rotation.toRotationMatrix();
  Mat3 flat;
  flat.col(0) = r.col(smallest);
  flat.col(1) = r.col(a);
  flat.col(2) = r.col(b);

  FlatGaussian g;
  g.center = center;
  g.rotation = Quat(flat).normalized();
  g.scales = Vec2(scales[a], scales[b]);
  const double middle = std::min(scales[a], scales[b]);
  return {g, middle > 0.0 ? scales[smallest] / middle : 1.0};
}

// --- Scene PLY -------------------------------------------------------------

LoadedScene read_scene(std::istream& in) {
  const ply::Header header = ply::read_header(in);
  const ply::Element* vertex = header.find("vertex");
  if (!vertex) throw Error(Errc::malformed, "scene file has no vertex element");
  for (const auto& p : vertex->properties) {
    if (p.is_list) throw Error(Errc::malformed, "scene vertex element has list property " + p.name);
  }

  auto require = [&](const std::string& name) {
    auto idx = vertex->find(name);
    if (!idx) throw Error(Errc::malformed, "scene file lacks property '" + name + "'");
    return *idx;
  };
  const std::size_t x = require("x"), y = require("y"), z = require("z");
  const std::size_t dc[3] = {require("f_dc_0"), require("f_dc_1"), require("f_dc_2")};
  const std::size_t opacity = require("opacity");
  const std::size_t scale[3] = {require("scale_0"), require("scale_1"), require("scale_2")};
  const std::size_t rot[4] = {require("rot_0"), require("rot_1"), require("rot_2"), require("rot_3")};
  std::vector<std::size_t> rest;
  while (auto idx = vertex->find("f_rest_" + std::to_string(rest.size()))) rest.push_back(*idx);

  ply::Cursor cur = ply::Cursor::read_rest(in);
  LoadedScene scene;
  std::vector<double> row(vertex->properties.size());
  std::vector<std::size_t> bad;
  for (const auto& element : header.elements) {
    const bool is_vertex = &element == vertex;
    for (std::size_t r = 0; r < element.count; ++r) {
      for (std::size_t p = 0; p < element.properties.size(); ++p) {
        const auto& prop = element.properties[p];
        if (is_vertex) {
          row[p] = cur.scalar(prop.type);
        } else if (prop.is_list) {
          cur.skip(static_cast<std::size_t>(cur.count(prop.count_type)) * ply::type_size(prop.type));
        } else {
          cur.skip(ply::type_size(prop.type));
        }
      }
      if (!is_vertex) continue;

      const bool finite = std::all_of(row.begin(), row.end(), [](double v) { return std::isfinite(v); });
      const Vec3 scales(std::exp(row[scale[0]]), std::exp(row[scale[1]]), std::exp(row[scale[2]]));
      Quat q(row[rot[0]], row[rot[1]], row[rot[2]], row[rot[3]]);
      if (!finite || !scales.allFinite() || !(q.norm() > 0.0)) {
        bad.push_back(r);
        continue;
      }
      auto [g, ratio] = flatten_gaussian(Vec3(row[x], row[y], row[z]), q.normalized(), scales);
      g.appearance.opacity = logistic(row[opacity]);
      g.appearance.color.dc = Vec3(row[dc[0]], row[dc[1]], row[dc[2]]);
      g.appearance.color.rest.reserve(rest.size());
      for (auto idx : rest) g.appearance.color.rest.push_back(row[idx]);
      if (!(g.scales.x() > 0.0) || !(g.scales.y() > 0.0)) {
        bad.push_back(r);
        continue;
      }
      if (ratio > kPoorFlatnessRatio) scene.flatten.poorly_flat.push_back(scene.gaussians.size());
      scene.flatten.max_ratio = std::max(scene.flatten.max_ratio, ratio);
      scene.gaussians.push_back(std::move(g));
    }
  }
  if (!bad.empty()) {
    throw Error(Errc::non_finite,
                "scene has non-finite or invalid values in records " + join_indices(bad), bad.front());
  }
  return scene;
}

void write_scene(std::ostream& out, std::span<const FlatGaussian> gaussians) {
  const std::size_t rest = gaussians.empty() ? 0 : gaussians.front().appearance.color.rest.size();
  for (std::size_t i = 0; i < gaussians.size(); ++i) {
    validate(gaussians[i], i);
    if (gaussians[i].appearance.color.rest.size() != rest) {
      throw Error(Errc::count_mismatch,
                  "gaussian " + std::to_string(i) + " has a different number of color coefficients", i);
    }
  }

  std::string buf = "ply\nformat binary_little_endian 1.0\nelement vertex " +
                    std::to_string(gaussians.size()) + "\n";
  for (const char* name : {"x", "y", "z", "nx", "ny", "nz", "f_dc_0", "f_dc_1", "f_dc_2"}) {
    buf += std::string("property float ") + name + "\n";
  }
  for (std::size_t k = 0; k < rest; ++k) buf += "property float f_rest_" + std::to_string(k) + "\n";
  for (const char* name : {"opacity", "scale_0", "scale_1", "scale_2", "rot_0", "rot_1", "rot_2", "rot_3"}) {
    buf += std::string("property float ") + name + "\n";
  }
  buf += "end_header\n";

  const auto put = [&buf](double v) { ply::put(buf, static_cast<float>(v)); };
  for (const auto& g : gaussians) {
    const Quat q = g.rotation.normalized();
    const double sigma = std::clamp(g.appearance.opacity, kOpacityClamp, 1.0 - kOpacityClamp);
    put(g.center.x());
    put(g.center.y());
    put(g.center.z());
    for (int k = 0; k < 3; ++k) put(0.0);
    for (int k = 0; k < 3; ++k) put(g.appearance.color.dc[k]);
    for (double c : g.appearance.color.rest) put(c);
    put(logit(sigma));
    put(std::log(kFlatEpsilon));
    put(std::log(g.scales.x()));
    put(std::log(g.scales.y()));
    put(q.w());
    put(q.x());
    put(q.y());
    put(q.z());
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

LoadedScene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_failure, "cannot open scene file " + path.string());
  try {
    return read_scene(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what(), e.index());
  }
}

void save_scene(std::span<const FlatGaussian> gaussians, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_failure, "cannot open " + path.string() + " for writing");
  write_scene(out, gaussians);
  out.flush();
  if (!out) throw Error(Errc::io_failure, "write failed for " + path.string());
}

// --- Triangle soups --------------------------------------------------------

std::filesystem::path sidecar_path(const std::filesystem::path& soup_path) {
  std::filesystem::path p = soup_path;
  p += ".attrs.tsv";
  return p;
}

void write_sidecar(std::ostream& out, std::span<const Appearance> attributes) {
  const std::size_t rest = attributes.empty() ? 0 : attributes.front().color.rest.size();
  std::string buf = "index\topacity\tf_dc_0\tf_dc_1\tf_dc_2";
  for (std::size_t k = 0; k < rest; ++k) buf += "\tf_rest_" + std::to_string(k);
  buf += '\n';
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    const Appearance& a = attributes[i];
    if (a.color.rest.size() != rest) {
      throw Error(Errc::count_mismatch,
                  "attribute row " + std::to_string(i) + " has a different number of color coefficients", i);
    }
    buf += std::to_string(i);
    buf += '\t';
    buf += text::format_double(a.opacity);
    for (int k = 0; k < 3; ++k) {
      buf += '\t';
      buf += text::format_double(a.color.dc[k]);
    }
    for (double c : a.color.rest) {
      buf += '\t';
      buf += text::format_double(c);
    }
    buf += '\n';
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::vector<Appearance> read_sidecar(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::malformed, "attribute sidecar is empty");
  std::size_t columns = 0;
  {
    std::istringstream head(line);
    std::string name;
    while (std::getline(head, name, '\t')) ++columns;
  }
  if (columns < 5 || line.rfind("index\topacity\tf_dc_0\tf_dc_1\tf_dc_2", 0) != 0) {
    throw Error(Errc::malformed, "attribute sidecar header must start with index, opacity, f_dc_0..2");
  }
  std::vector<Appearance> out;
  std::size_t line_no = 1;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string cell;
    values.clear();
    std::size_t index = 0;
    std::getline(cells, cell, '\t');
    if (!text::parse_int(cell, index) || index != out.size()) {
      throw Error(Errc::malformed,
                  "sidecar line " + std::to_string(line_no) + ": expected index " + std::to_string(out.size()),
                  line_no);
    }
    while (std::getline(cells, cell, '\t')) {
      double v = 0.0;
      if (!text::parse_double(cell, v)) {
        throw Error(Errc::malformed,
                    "sidecar line " + std::to_string(line_no) + ": bad number '" + cell + "'", line_no);
      }
      values.push_back(v);
    }
    if (values.size() + 1 != columns) {
      throw Error(Errc::malformed,
                  "sidecar line " + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                      " columns",
                  line_no);
    }
    Appearance a;
    a.opacity = values[0];
    a.color.dc = Vec3(values[1], values[2], values[3]);
    a.color.rest.assign(values.begin() + 4, values.end());
    out.push_back(std::move(a));
  }
  return out;
}

void save_soup(const TriangleSoup& soup, const std::filesystem::path& path) {
  soup.check_consistent();
  IndexedMesh mesh;
  mesh.vertices.reserve(3 * soup.size());
  mesh.faces.reserve(soup.size());
  for (std::size_t i = 0; i < soup.size(); ++i) {
    const auto& t = soup.triangles[i];
    mesh.vertices.insert(mesh.vertices.end(), {t.v0, t.v1, t.v2});
    const auto base = static_cast<std::uint32_t>(3 * i);
    mesh.faces.push_back({base, base + 1, base + 2});
  }
  save_mesh(mesh, path);

  const auto side = sidecar_path(path);
  std::ofstream out(side, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_failure, "cannot open " + side.string() + " for writing");
  write_sidecar(out, soup.attributes);
  out.flush();
  if (!out) throw Error(Errc::io_failure, "write failed for " + side.string());
}

TriangleSoup load_soup(const std::filesystem::path& path) {
  const IndexedMesh mesh = load_mesh(path, {.allow_empty = true});
  if (mesh.vertices.size() != 3 * mesh.faces.size()) {
    throw Error(Errc::shared_vertices,
                path.string() + ": soup has " + std::to_string(mesh.vertices.size()) + " vertices for " +
                    std::to_string(mesh.faces.size()) + " faces (expected 3 per face, none shared)");
  }
  TriangleSoup soup;
  soup.triangles.reserve(mesh.faces.size());
  for (std::size_t i = 0; i < mesh.faces.size(); ++i) {
    const auto base = static_cast<std::uint32_t>(3 * i);
    if (mesh.faces[i] != FaceIndices{base, base + 1, base + 2}) {
      throw Error(Errc::shared_vertices,
                  path.string() + ": face " + std::to_string(i) + " does not use its own vertices " +
                      std::to_string(base) + ".." + std::to_string(base + 2),
                  i);
    }
    soup.triangles.push_back({mesh.vertices[base], mesh.vertices[base + 1], mesh.vertices[base + 2]});
  }

  const auto side = sidecar_path(path);
  std::ifstream in(side);
  if (!in) throw Error(Errc::io_failure, "cannot open attribute sidecar " + side.string());
  try {
    soup.attributes = read_sidecar(in);
  } catch (const Error& e) {
    throw Error(e.code(), side.string() + ": " + e.what(), e.index());
  }
  if (soup.attributes.size() != soup.triangles.size()) {
    throw Error(Errc::count_mismatch, side.string() + " has " + std::to_string(soup.attributes.size()) +
                                          " rows but the soup has " + std::to_string(soup.triangles.size()) +
                                          " triangles");
  }
  return soup;
}

}  // namespace splatedit
