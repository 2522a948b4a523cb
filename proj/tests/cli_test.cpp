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

#include "cli.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "splatedit/io.hpp"
#include "splatedit/meshio.hpp"
#include "splatedit/render.hpp"
#include "support/oracles.hpp"
#include "support/temp_dir.hpp"

namespace splatedit {
namespace {

using testing::Rng;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string file_arg(const std::filesystem::path& p) { return p.string(); }

class CliTest : public ::testing::Test {
 protected:
  testing::TempDir dir;
  Rng rng{2024};

  std::filesystem::path scene_file(std::size_t n, const std::string& name = "scene.ply") {
    std::vector<FlatGaussian> gs;
    for (std::size_t i = 0; i < n; ++i) gs.push_back(testing::random_gaussian(rng, 3));
    const auto path = dir.path() / name;
    save_scene(gs, path);
    return path;
  }

  std::filesystem::path mesh_file(const IndexedMesh& mesh, const std::string& name) {
    const auto path = dir.path() / name;
    save_mesh(mesh, path);
    return path;
  }
};

TEST_F(CliTest, HelpAndUsage) {
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"encode"}).code, cli::kExitUsage);
}

TEST_F(CliTest, EncodeDecodeRoundTrip) {
  const auto scene = scene_file(500);
  const auto soup = dir.path() / "soup.obj";
  const auto back = dir.path() / "back.ply";
  Result r = run({"encode", file_arg(scene), "-o", file_arg(soup)});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("encoded N=500"), std::string::npos) << r.out;
  EXPECT_TRUE(std::filesystem::exists(sidecar_path(soup)));
  r = run({"decode", file_arg(soup), "-o", file_arg(back)});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("decoded N=500"), std::string::npos);

  const auto a = load_scene(scene).gaussians;
  const auto b = load_scene(back).gaussians;
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_LE((a[i].center - b[i].center).norm(), 1e-6 * std::max(1.0, a[i].center.norm()));
    EXPECT_LE((a[i].rotation_matrix() - b[i].rotation_matrix()).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_LE(((a[i].scales - b[i].scales).array() / a[i].scales.array()).abs().maxCoeff(), 1e-6);
  }
}

TEST_F(CliTest, EncodeLargeSceneReportsCount) {
  const auto scene = scene_file(100000, "big.ply");
  const Result r = run({"encode", file_arg(scene), "-o", file_arg(dir.path() / "big.ply.obj")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("N=100000"), std::string::npos) << r.out;
}

TEST_F(CliTest, DecodeDegenerateSoupNamesIndex) {
  std::vector<FlatGaussian> gs;
  for (int i = 0; i < 4; ++i) gs.push_back(testing::random_gaussian(rng));
  TriangleSoup soup = encode_soup(gs);
  soup.triangles[2].v2 = soup.triangles[2].v0 + 2.0 * (soup.triangles[2].v1 - soup.triangles[2].v0);
  const auto path = dir.path() / "bad.obj";
  save_soup(soup, path);
  const Result r = run({"decode", file_arg(path), "-o", file_arg(dir.path() / "x.ply")});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_NE(r.err.find("2"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("degenerate"), std::string::npos) << r.err;
  EXPECT_FALSE(std::filesystem::exists(dir.path() / "x.ply"));
}

TEST_F(CliTest, PropagateIdentityAndRigid) {
  const IndexedMesh mesh = testing::jittered_sphere(rng, 3, 1.0, 0.02);
  std::vector<FlatGaussian> gs;
  for (int i = 0; i < 300; ++i) {
    FlatGaussian g = testing::random_gaussian(rng);
    g.center = testing::random_vec(rng, -1, 1).normalized() * 1.02;
    g.scales = Vec2(0.05, 0.03);
    gs.push_back(g);
  }
  const TriangleSoup soup = encode_soup(gs);
  const auto soup_path = dir.path() / "in.ply";
  save_soup(soup, soup_path);
  const auto orig = mesh_file(mesh, "orig.obj");

  Result r = run({"propagate", "--soup", file_arg(soup_path), "--original", file_arg(orig), "--edited",
                  file_arg(orig), "-o", file_arg(dir.path() / "same.ply"), "--report",
                  file_arg(dir.path() / "report.tsv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Vertices"), std::string::npos);
  EXPECT_NE(r.out.find("propagated N=300"), std::string::npos);
  {
    std::istringstream table(r.out);
    std::string header;
    std::getline(table, header);
    std::size_t v = 0, f = 0;
    double t = 0.0;
    table >> v >> f >> t;
    EXPECT_EQ(v, mesh.vertex_count());
    EXPECT_EQ(f, mesh.face_count());
    EXPECT_GT(t, 0.0);
  }
  const TriangleSoup same = load_soup(dir.path() / "same.ply");
  for (std::size_t i = 0; i < soup.size(); ++i) {
    EXPECT_LE((same.triangles[i].v0 - soup.triangles[i].v0).norm(), 1e-9);
    EXPECT_LE((same.triangles[i].v2 - soup.triangles[i].v2).norm(), 1e-9);
  }
  std::ifstream report(dir.path() / "report.tsv");
  std::string first;
  std::getline(report, first);
  EXPECT_EQ(first, "triangle\tface\tdistance\tflag");

  const RigidMotion m{testing::random_rotation(rng), Vec3(0.5, -2, 1)};
  const auto moved = mesh_file(transformed(mesh, m), "moved.ply");
  r = run({"--threads", "3", "propagate", "--soup", file_arg(soup_path), "--original", file_arg(orig),
           "--edited", file_arg(moved), "-o", file_arg(dir.path() / "moved_soup.obj"), "--scene",
           file_arg(dir.path() / "moved_scene.ply")});
  ASSERT_EQ(r.code, 0) << r.err;
  const TriangleSoup out = load_soup(dir.path() / "moved_soup.obj");
  const double tol = 1e-5 * bounding_diagonal(mesh);
  for (std::size_t i = 0; i < soup.size(); ++i) {
    const SoupTriangle expect = testing::rigid(m, soup.triangles[i]);
    EXPECT_LE((out.triangles[i].v0 - expect.v0).norm(), tol);
    EXPECT_LE((out.triangles[i].v1 - expect.v1).norm(), tol);
    EXPECT_LE((out.triangles[i].v2 - expect.v2).norm(), tol);
  }
  EXPECT_EQ(load_scene(dir.path() / "moved_scene.ply").gaussians.size(), 300u);
}

TEST_F(CliTest, PropagateMismatchedMeshes) {
  const IndexedMesh a = testing::random_mesh(rng, 10);
  const IndexedMesh b = testing::random_mesh(rng, 12);
  std::vector<FlatGaussian> gs = {testing::random_gaussian(rng)};
  save_soup(encode_soup(gs), dir.path() / "s.obj");
  const Result r = run({"propagate", "--soup", file_arg(dir.path() / "s.obj"), "--original",
                        file_arg(mesh_file(a, "a.obj")), "--edited", file_arg(mesh_file(b, "b.obj")), "-o",
                        file_arg(dir.path() / "o.obj")});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_NE(r.err.find("10"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("12"), std::string::npos) << r.err;
}

TEST_F(CliTest, SampleDefaults) {
  const IndexedMesh mesh = testing::jittered_sphere(rng, 2, 1.0, 0.0);
  const auto path = mesh_file(mesh, "m.obj");
  Result r = run({"sample", file_arg(path), "-o", file_arg(dir.path() / "s.tsv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream tsv(dir.path() / "s.tsv");
  std::size_t lines = 0;
  for (std::string line; std::getline(tsv, line);) ++lines;
  EXPECT_EQ(lines, 100001u);

  std::ofstream(dir.path() / "sphere.sdf") << "sphere 0 0 0 1\n";
  r = run({"sample", file_arg(path), "-o", file_arg(dir.path() / "s.ply"), "-n", "500", "--sdf",
           file_arg(dir.path() / "sphere.sdf")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(load_scene(dir.path() / "s.ply").gaussians.size(), 500u);

  r = run({"sample", file_arg(path), "-o", file_arg(dir.path() / "t.ply"), "--beta", "-1"});
  EXPECT_EQ(r.code, cli::kExitNumeric);
}

TEST_F(CliTest, RenderEmptySceneIsBackground) {
  save_scene({}, dir.path() / "empty.ply");
  const Result r = run({"render", file_arg(dir.path() / "empty.ply"), "-o", file_arg(dir.path() / "e.ppm"),
                        "--size", "8", "6", "--background", "0", "0", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Image img = read_image(dir.path() / "e.ppm");
  ASSERT_EQ(img.width, 8u);
  ASSERT_EQ(img.height, 6u);
  for (const auto& px : img.pixels) EXPECT_EQ(px, Rgb(0, 0, 1));
}

TEST_F(CliTest, RenderSceneIsThreadIndependent) {
  const auto scene = scene_file(200);
  ASSERT_EQ(run({"render", file_arg(scene), "-o", file_arg(dir.path() / "a.ppm"), "--size", "40", "30"}).code, 0);
  ASSERT_EQ(run({"--threads", "4", "render", file_arg(scene), "-o", file_arg(dir.path() / "b.ppm"), "--size",
                 "40", "30"})
                .code,
            0);
  std::ifstream a(dir.path() / "a.ppm", std::ios::binary), b(dir.path() / "b.ppm", std::ios::binary);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
}

TEST_F(CliTest, ValidateKinds) {
  const auto scene = scene_file(50);
  EXPECT_EQ(run({"validate", file_arg(scene)}).code, 0);
  std::ofstream(dir.path() / "s.sdf") << "sphere 0 0 0 1\n";
  EXPECT_EQ(run({"validate", file_arg(scene), "--sdf", file_arg(dir.path() / "s.sdf")}).code, 0);
  EXPECT_EQ(run({"validate", file_arg(dir.path() / "s.sdf")}).code, 0);
  const auto mesh = mesh_file(testing::random_mesh(rng, 5), "m.ply");
  EXPECT_EQ(run({"validate", file_arg(mesh)}).code, 0);
  write_image(Image(2, 2), dir.path() / "i.ppm");
  EXPECT_EQ(run({"validate", file_arg(dir.path() / "i.ppm")}).code, 0);
}

TEST_F(CliTest, ExitCodeClasses) {
  // io
  EXPECT_EQ(run({"validate", file_arg(dir.path() / "missing.ply")}).code, cli::kExitIo);
  EXPECT_EQ(run({"encode", file_arg(dir.path() / "missing.ply"), "-o", file_arg(dir.path() / "x.obj")}).code,
            cli::kExitIo);
  // validation
  std::ofstream(dir.path() / "broken.obj") << "v 0 0 0\nf 1 2 3\n";
  EXPECT_EQ(run({"validate", file_arg(dir.path() / "broken.obj")}).code, cli::kExitValidation);
  std::ofstream(dir.path() / "broken.sdf") << "sphere 0 0\n";
  EXPECT_EQ(run({"validate", file_arg(dir.path() / "broken.sdf")}).code, cli::kExitValidation);
  // numeric
  std::ofstream(dir.path() / "nan.obj") << "v nan 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n";
  const Result r = run({"validate", file_arg(dir.path() / "nan.obj")});
  EXPECT_EQ(r.code, cli::kExitNumeric) << r.err;
}

}  // namespace
}  // namespace splatedit
