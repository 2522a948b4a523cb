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

#include "splatedit/synthetic.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "splatedit/propagate.hpp"
#include "splatedit/random.hpp"
#include "splatedit/spatial.hpp"

namespace splatedit::synthetic {

IndexedMesh wave_grid(std::size_t target_faces) {
  const auto quads = std::max<std::size_t>(1, target_faces / 2);
  const auto nx = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(double(quads)))));
  const auto ny = std::max<std::size_t>(1, (quads + nx / 2) / nx);

  IndexedMesh mesh;
  mesh.vertices.reserve((nx + 1) * (ny + 1));
  mesh.faces.reserve(2 * nx * ny);
  for (std::size_t j = 0; j <= ny; ++j) {
    for (std::size_t i = 0; i <= nx; ++i) {
      const double x = -1.0 + 2.0 * double(i) / double(nx);
      const double y = -1.0 + 2.0 * double(j) / double(ny);
      mesh.vertices.emplace_back(x, y, 0.1 * std::sin(3.0 * x) * std::cos(2.0 * y));
    }
  }
  const auto at = [nx](std::size_t i, std::size_t j) { return std::uint32_t(j * (nx + 1) + i); };
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      mesh.faces.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
      mesh.faces.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
    }
  }
  return mesh;
}

IndexedMesh twist_bend(const IndexedMesh& mesh, double strength) {
  IndexedMesh out = mesh;
  for (auto& v : out.vertices) {
    const double angle = strength * v.y();
    const double c = std::cos(angle), s = std::sin(angle);
    v = Vec3(c * v.x() - s * v.z(), v.y(), s * v.x() + c * v.z() + 0.3 * strength * v.y() * v.y());
  }
  return out;
}

TriangleSoup surface_soup(const IndexedMesh& mesh, std::size_t n, std::uint64_t seed) {
  const auto samples = sample_surface(mesh, n, seed);
  double area = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const MeshFace face = mesh_face(mesh, f);
    area += triangle_area(face.w0, face.w1, face.w2);
  }
  const double footprint = std::sqrt(area / double(std::max<std::size_t>(n, 1)));

  std::vector<FlatGaussian> gaussians;
  gaussians.reserve(n);
  CounterRng rng(seed, ~std::uint64_t{0});
  for (const auto& s : samples) {
    const Vec3 normal = s.normal;
    const Vec3 helper = std::abs(normal.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 t0 = normal.cross(helper).normalized();
    const Vec3 t1 = normal.cross(t0);
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    Mat3 r;
    r.col(0) = normal;
    r.col(1) = std::cos(phi) * t0 + std::sin(phi) * t1;
    r.col(2) = r.col(0).cross(r.col(1));

    FlatGaussian g;
    g.center = s.point;
    g.rotation = Quat(r).normalized();
    g.scales = footprint * Vec2(0.5 + rng.uniform(), 0.5 + rng.uniform());
    g.appearance.opacity = 0.2 + 0.8 * rng.uniform();
    g.appearance.color.dc = Vec3(rng.uniform(), rng.uniform(), rng.uniform()) * 2.0 - Vec3::Ones();
    gaussians.push_back(std::move(g));
  }
  return encode_soup(gaussians);
}

EditTiming time_edit(const TriangleSoup& soup, const IndexedMesh& original,
                     const IndexedMesh& edited, std::size_t threads) {
  const auto start = std::chrono::steady_clock::now();
  const EditPair pair = validate_edit_pair(original, edited);
  const CentroidIndex index(original);
  const PropagationResult result = propagate_soup(soup, pair, index, {.threads = threads});
  const auto stop = std::chrono::steady_clock::now();
  return {original.vertex_count(), original.face_count(),
          std::chrono::duration<double>(stop - start).count(), result.report.flagged_count()};
}

}  // namespace splatedit::synthetic
