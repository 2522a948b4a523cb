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

#include "splatedit/model.hpp"

#include <cmath>
#include <string>

#include "splatedit/error.hpp"

namespace splatedit {

Mat3 FlatGaussian::covariance() const {
  const Mat3 r = rotation_matrix();
  const Vec3 s(kFlatEpsilon, scales.x(), scales.y());
  return r * s.cwiseAbs2().asDiagonal() * r.transpose();
}

void validate(const FlatGaussian& g, std::size_t index) {
  const auto where = " (gaussian " + std::to_string(index) + ")";
  if (!g.center.allFinite() || !g.rotation.coeffs().allFinite() ||
      !g.scales.allFinite() || !std::isfinite(g.appearance.opacity)) {
    throw Error(Errc::non_finite, "non-finite gaussian parameter" + where, index);
  }
  if (std::abs(g.rotation.norm() - 1.0) > 1e-6) {
    throw Error(Errc::invalid_argument, "rotation quaternion is not unit" + where, index);
  }
  if (!(g.scales.x() > 0.0) || !(g.scales.y() > 0.0)) {
    throw Error(Errc::invalid_argument, "scales must be positive" + where, index);
  }
  if (g.appearance.opacity < 0.0 || g.appearance.opacity > 1.0) {
    throw Error(Errc::invalid_argument, "opacity outside [0, 1]" + where, index);
  }
}

Vec3 gaussian_normal(const FlatGaussian& g) { return g.rotation_matrix().col(0); }

void TriangleSoup::check_consistent() const {
  if (triangles.size() != attributes.size()) {
    throw Error(Errc::count_mismatch,
                "triangle soup has " + std::to_string(triangles.size()) +
                    " triangles but " + std::to_string(attributes.size()) +
                    " attribute records");
  }
}

SoupTriangle encode_triangle(const FlatGaussian& g) {
  const Mat3 r = g.rotation_matrix();
  return {g.center, g.center + g.scales.x() * r.col(1),
          g.center + g.scales.y() * r.col(2)};
}

FlatGaussian decode_triangle(const SoupTriangle& tri, std::size_t index) {
  if (!tri.v0.allFinite() || !tri.v1.allFinite() || !tri.v2.allFinite()) {
    throw Error(Errc::non_finite,
                "non-finite vertex in triangle " + std::to_string(index), index);
  }
  if (is_degenerate(tri.v0, tri.v1, tri.v2)) {
    throw Error(Errc::degenerate, "degenerate triangle " + std::to_string(index), index);
  }
  const Vec3 e1 = tri.v1 - tri.v0;
  const Vec3 e2 = tri.v2 - tri.v0;

  Mat3 r;
  r.col(1) = e1.normalized();
  r.col(0) = e1.cross(e2).normalized();
  // Gram-Schmidt of the second edge against the first, inside the plane.
  r.col(2) = (e2 - e2.dot(r.col(1)) * r.col(1)).normalized();
  if (r.determinant() < 0.0) r.col(0) = -r.col(0);

  FlatGaussian g;
  g.center = tri.v0;
  g.rotation = Quat(r).normalized();
  g.scales = Vec2(e1.norm(), e2.dot(r.col(2)));
  return g;
}

TriangleSoup encode_soup(std::span<const FlatGaussian> gaussians) {
  TriangleSoup soup;
  soup.triangles.reserve(gaussians.size());
  soup.attributes.reserve(gaussians.size());
  for (std::size_t i = 0; i < gaussians.size(); ++i) {
    validate(gaussians[i], i);
    soup.triangles.push_back(encode_triangle(gaussians[i]));
    soup.attributes.push_back(gaussians[i].appearance);
  }
  return soup;
}

std::vector<FlatGaussian> decode_soup(const TriangleSoup& soup) {
  soup.check_consistent();
  std::vector<FlatGaussian> out;
  out.reserve(soup.size());
  for (std::size_t i = 0; i < soup.size(); ++i) {
    FlatGaussian g = decode_triangle(soup.triangles[i], i);
    g.appearance = soup.attributes[i];
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace splatedit
