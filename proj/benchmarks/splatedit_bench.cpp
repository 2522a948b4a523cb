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

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "splatedit/meshio.hpp"
#include "splatedit/model.hpp"
#include "splatedit/propagate.hpp"
#include "splatedit/render.hpp"
#include "splatedit/spatial.hpp"
#include "splatedit/synthetic.hpp"

namespace splatedit {
namespace {

std::vector<FlatGaussian> random_scene(std::size_t n, double extent) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<FlatGaussian> out(n);
  for (auto& g : out) {
    g.center = extent * Vec3(u(rng), u(rng), u(rng));
    g.rotation = Quat(u(rng), u(rng), u(rng), u(rng)).normalized();
    g.scales = Vec2(0.01 + 0.02 * (u(rng) + 1), 0.01 + 0.02 * (u(rng) + 1));
    g.appearance.opacity = 0.5 + 0.4 * u(rng);
    g.appearance.color.dc = Vec3(u(rng), u(rng), u(rng));
  }
  return out;
}

void BM_BuildIndex(benchmark::State& state) {
  const IndexedMesh mesh = synthetic::wave_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(CentroidIndex(mesh));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(mesh.face_count()));
}
BENCHMARK(BM_BuildIndex)->Arg(10000)->Arg(120000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_NearestFace(benchmark::State& state) {
  const IndexedMesh mesh = synthetic::wave_grid(static_cast<std::size_t>(state.range(0)));
  const CentroidIndex index(mesh);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec3> queries(4096);
  // Near the surface, as soup triangles are.
  for (auto& q : queries) {
    const double x = u(rng), y = u(rng);
    q = Vec3(x, y, 0.1 * std::sin(3 * x) * std::cos(2 * y) + 0.01 * u(rng));
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(index.nearest(queries[i++ % queries.size()]));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_NearestFace)->Arg(10000)->Arg(1000000);

void BM_PropagateSoup(benchmark::State& state) {
  const IndexedMesh mesh = synthetic::wave_grid(120000);
  const IndexedMesh edited = synthetic::twist_bend(mesh);
  const TriangleSoup soup = synthetic::surface_soup(mesh, static_cast<std::size_t>(state.range(0)), 1);
  const CentroidIndex index(mesh);
  const EditPair pair = validate_edit_pair(mesh, edited);
  for (auto _ : state) benchmark::DoNotOptimize(propagate_soup(soup, pair, index));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PropagateSoup)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_EncodeDecode(benchmark::State& state) {
  const auto scene = random_scene(static_cast<std::size_t>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(decode_soup(encode_soup(scene)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EncodeDecode)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Render(benchmark::State& state) {
  const auto scene = random_scene(static_cast<std::size_t>(state.range(0)), 1.0);
  const OrthoCamera camera =
      OrthoCamera::look_at(Vec3(0, 0, 5), Vec3::Zero(), Vec3::UnitY(), 2.5, 2.5, 256, 256);
  for (auto _ : state) benchmark::DoNotOptimize(render(scene, camera, Rgb::Ones()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Render)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace splatedit

BENCHMARK_MAIN();
