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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "splatedit/error.hpp"
#include "support/oracles.hpp"
#include "support/temp_dir.hpp"

namespace splatedit {
namespace {

using testing::Rng;

IndexedMesh two_faces() {
  IndexedMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0.5}};
  m.faces = {{0, 1, 2}, {1, 3, 2}};
  return m;
}

Errc error_code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::io_failure;
}

TEST(MeshIo, ReadsMinimalObj) {
  std::istringstream in("# one triangle\nv 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
  const IndexedMesh m = read_obj(in);
  EXPECT_EQ(m.vertex_count(), 3u);
  ASSERT_EQ(m.face_count(), 1u);
  EXPECT_EQ(m.faces[0], (FaceIndices{0, 1, 2}));
}

TEST(MeshIo, ObjAcceptsSlashedAndNegativeIndices) {
  std::istringstream in("v 0 0 0\nv 1 0 0\nv 0 1 0\nvt 0 0\nvn 0 0 1\nf 1/1/1 2//1 -1\n");
  const IndexedMesh m = read_obj(in);
  EXPECT_EQ(m.faces[0], (FaceIndices{0, 1, 2}));
}

TEST(MeshIo, QuadIsFanTriangulated) {
  std::istringstream in("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
  const IndexedMesh m = read_obj(in);
  ASSERT_EQ(m.face_count(), 2u);
  EXPECT_EQ(m.faces[0], (FaceIndices{0, 1, 2}));
  EXPECT_EQ(m.faces[1], (FaceIndices{0, 2, 3}));
}

TEST(MeshIo, PentagonFanMatchesOracle) {
  std::istringstream in("v 0 0 0\nv 1 0 0\nv 2 1 0\nv 1 2 0\nv 0 1 0\nf 5 4 3 2 1\n");
  const IndexedMesh m = read_obj(in);
  // Fan around the first corner: (a, b_k, b_{k+1}).
  const std::vector<FaceIndices> expected = {{4, 3, 2}, {4, 2, 1}, {4, 1, 0}};
  EXPECT_EQ(m.faces, expected);
}

TEST(MeshIo, ObjErrorsAreDistinctAndCarryLine) {
  std::istringstream bad_number("v 0 0 0\nv 1 zero 0\n");
  try {
    read_obj(bad_number);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::malformed);
    EXPECT_EQ(e.index(), 2u);
  }
  std::istringstream out_of_range("v 0 0 0\nv 1 0 0\nv 0 1 0\n\nf 1 2 9\n");
  try {
    read_obj(out_of_range);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::index_out_of_range);
    EXPECT_EQ(e.index(), 5u);
  }
  std::istringstream no_faces("v 0 0 0\n");
  EXPECT_EQ(error_code_of([&] { read_obj(no_faces); }), Errc::empty_mesh);
}

TEST(MeshIo, SaveLoadRoundTripBothFormats) {
  testing::TempDir dir;
  Rng rng(1);
  IndexedMesh m = testing::random_mesh(rng, 50);
  for (const char* name : {"m.obj", "m.ply"}) {
    const auto path = dir.path() / name;
    save_mesh(m, path);
    const IndexedMesh back = load_mesh(path);
    EXPECT_EQ(back.faces, m.faces);
    ASSERT_EQ(back.vertices.size(), m.vertices.size());
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
      // Shortest round-trip text and double binary are both exact.
      EXPECT_EQ(back.vertices[i], m.vertices[i]);
    }
  }
  const auto path = dir.path() / "two.obj";
  save_mesh(two_faces(), path);
  EXPECT_EQ(load_mesh(path).faces, two_faces().faces);
}

TEST(MeshIo, PlyReaderHandlesFloatVerticesAndExtraProperties) {
  std::string bytes =
      "ply\nformat binary_little_endian 1.0\ncomment test\nelement vertex 4\nproperty float x\n"
      "property float y\nproperty float z\nproperty uchar red\nelement face 1\n"
      "property list uchar int vertex_indices\nend_header\n";
  auto put_f = [&](float v) { bytes.append(reinterpret_cast<const char*>(&v), 4); };
  auto put_i = [&](std::int32_t v) { bytes.append(reinterpret_cast<const char*>(&v), 4); };
  const float coords[4][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  for (auto& c : coords) {
    for (float v : c) put_f(v);
    bytes.push_back('\x7f');
  }
  bytes.push_back('\x04');
  for (int i : {0, 1, 2, 3}) put_i(i);
  std::istringstream in(bytes);
  const IndexedMesh m = read_ply_mesh(in);
  ASSERT_EQ(m.face_count(), 2u);
  EXPECT_EQ(m.faces[1], (FaceIndices{0, 2, 3}));
  EXPECT_EQ(m.vertices[2], Vec3(1, 1, 0));
}

TEST(MeshIo, PlyTruncatedPayloadIsMalformed) {
  std::ostringstream out;
  write_ply_mesh(out, two_faces());
  std::string bytes = out.str();
  bytes.resize(bytes.size() - 5);
  std::istringstream in(bytes);
  EXPECT_EQ(error_code_of([&] { read_ply_mesh(in); }), Errc::malformed);
}

TEST(MeshIo, LoadErrors) {
  testing::TempDir dir;
  EXPECT_EQ(error_code_of([&] { load_mesh(dir.path() / "missing.obj"); }), Errc::io_failure);
  EXPECT_EQ(error_code_of([&] { load_mesh(dir.path() / "mesh.stl"); }), Errc::invalid_argument);
}

TEST(MeshIo, EditPairValidation) {
  const IndexedMesh m = two_faces();
  EXPECT_NO_THROW(validate_edit_pair(m, m));
  IndexedMesh moved = m;
  moved.vertices[3] += Vec3(0.1, 0.2, 0.3);
  EXPECT_NO_THROW(validate_edit_pair(m, moved));

  IndexedMesh three = m;
  three.faces.push_back({0, 1, 3});
  try {
    validate_edit_pair(m, three);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::count_mismatch);
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
  IndexedMesh reindexed = m;
  reindexed.faces[1] = {1, 2, 3};
  try {
    validate_edit_pair(m, reindexed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::topology_mismatch);
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(MeshIo, EditPairWithItselfAlwaysValid) {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const IndexedMesh m = testing::random_mesh(rng, 1 + i);
    EXPECT_NO_THROW(validate_edit_pair(m, m));
  }
}

TEST(MeshIo, FaceCentroid) {
  IndexedMesh m;
  m.vertices = {{0, 0, 0}, {3, 0, 0}, {0, 3, 0}};
  m.faces = {{0, 1, 2}};
  EXPECT_EQ(face_centroid(m, 0), Vec3(1, 1, 0));
  const Vec3 t(2, -1, 5);
  EXPECT_TRUE(face_centroid(transformed(m, {Mat3::Identity(), t}), 0).isApprox(Vec3(1, 1, 0) + t));
  EXPECT_EQ(error_code_of([&] { face_centroid(m, 1); }), Errc::index_out_of_range);

  Rng rng(2);
  const IndexedMesh r = testing::random_mesh(rng, 20);
  for (std::size_t f = 0; f < r.face_count(); ++f) {
    const auto& idx = r.faces[f];
    Vec3 mean = Vec3::Zero();
    for (auto v : idx) mean += r.vertices[v];
    EXPECT_TRUE(face_centroid(r, f).isApprox(mean / 3.0, 1e-14));
  }
}

TEST(MeshIo, SampleSingleTriangleBarycentric) {
  IndexedMesh m;
  m.vertices = {{0, 0, 0}, {2, 0, 0}, {0, 1, 1}};
  m.faces = {{0, 1, 2}};
  const auto samples = sample_surface(m, 100, 42);
  ASSERT_EQ(samples.size(), 100u);
  const Vec3 e1 = m.vertices[1] - m.vertices[0];
  const Vec3 e2 = m.vertices[2] - m.vertices[0];
  for (const auto& s : samples) {
    // Solve point = w0 + b1 e1 + b2 e2 in the least-squares sense.
    Eigen::Matrix<double, 3, 2> a;
    a << e1, e2;
    const Eigen::Vector2d b = a.colPivHouseholderQr().solve(s.point - m.vertices[0]);
    const double b0 = 1.0 - b.x() - b.y();
    EXPECT_GE(b0, -1e-12);
    EXPECT_GE(b.x(), -1e-12);
    EXPECT_GE(b.y(), -1e-12);
    EXPECT_NEAR(b0 + b.x() + b.y(), 1.0, 1e-12);
    EXPECT_EQ(s.face_id, 0u);
    EXPECT_TRUE(s.normal.isApprox(e1.cross(e2).normalized()));
  }
}

TEST(MeshIo, SampleZeroCountAndZeroArea) {
  const IndexedMesh m = two_faces();
  EXPECT_TRUE(sample_surface(m, 0, 1).empty());
  IndexedMesh flat;
  flat.vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
  flat.faces = {{0, 1, 2}};
  EXPECT_EQ(error_code_of([&] { sample_surface(flat, 10, 1); }), Errc::degenerate);
}

TEST(MeshIo, SampleFrequenciesFollowArea) {
  // Areas 1 and 3.
  IndexedMesh m;
  m.vertices = {{0, 0, 0}, {2, 0, 0}, {0, 1, 0}, {10, 0, 0}, {12, 0, 0}, {10, 3, 0}};
  m.faces = {{0, 1, 2}, {3, 4, 5}};
  const std::size_t n = 100000;
  const auto samples = sample_surface(m, n, 2024);
  std::size_t second = 0;
  for (const auto& s : samples) second += s.face_id == 1;
  const double freq = double(second) / double(n);
  EXPECT_NEAR(freq, 0.75, 0.01);
  const double e0 = 0.25 * n, e1 = 0.75 * n;
  const double o0 = double(n - second), o1 = double(second);
  const double chi2 = (o0 - e0) * (o0 - e0) / e0 + (o1 - e1) * (o1 - e1) / e1;
  EXPECT_GT(testing::chi_square_1dof_p(chi2), 0.001);
}

TEST(MeshIo, SamplesLieOnTheirFace) {
  Rng rng(8);
  const IndexedMesh m = testing::jittered_sphere(rng, 3, 2.0, 0.1);
  const double diag = bounding_diagonal(m);
  for (const auto& s : sample_surface(m, 5000, 3)) {
    const MeshFace f = mesh_face(m, s.face_id);
    EXPECT_LE(std::abs((s.point - f.w0).dot(s.normal)), 1e-9 * diag);
  }
}

TEST(MeshIo, SamplingIsDeterministicAndTranslationEquivariant) {
  Rng rng(12);
  const IndexedMesh m = testing::jittered_sphere(rng, 2, 1.0, 0.05);
  const Vec3 t(3.5, -2.0, 0.25);
  const IndexedMesh shifted = transformed(m, {Mat3::Identity(), t});
  const auto a = sample_surface(m, 2000, 99);
  const auto b = sample_surface(m, 2000, 99, 4);
  const auto c = sample_surface(shifted, 2000, 99);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].point, b[i].point);
    EXPECT_EQ(a[i].face_id, b[i].face_id);
    EXPECT_EQ(a[i].face_id, c[i].face_id);
    EXPECT_LE((c[i].point - (a[i].point + t)).norm(), 1e-12);
  }
}

}  // namespace
}  // namespace splatedit
