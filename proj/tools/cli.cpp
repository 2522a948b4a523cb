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

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "splatedit/error.hpp"
#include "splatedit/io.hpp"
#include "splatedit/meshio.hpp"
#include "splatedit/model.hpp"
#include "splatedit/parallel.hpp"
#include "splatedit/propagate.hpp"
#include "splatedit/render.hpp"
#include "splatedit/spatial.hpp"
#include "splatedit/surface_prior.hpp"
#include "splatedit/synthetic.hpp"

namespace splatedit::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string lower_extension(const fs::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

void require_file(const fs::path& path, const char* what) {
  if (!fs::is_regular_file(path)) {
    throw Error(Errc::io_failure, std::string(what) + " not found: " + path.string());
  }
}

void require_writable_parent(const fs::path& path) {
  const fs::path parent = path.has_parent_path() ? path.parent_path() : fs::path(".");
  if (!fs::is_directory(parent)) {
    throw Error(Errc::io_failure, "output directory does not exist: " + parent.string());
  }
}

void require_extension(const fs::path& path, std::initializer_list<const char*> allowed) {
  const auto ext = lower_extension(path);
  for (const char* a : allowed) {
    if (ext == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw Error(Errc::invalid_argument, "unsupported extension for " + path.string() + " (expected " + list + ")");
}

struct Globals {
  std::optional<std::size_t> threads;
  int verbosity = 0;

  std::size_t thread_count() const { return resolve_thread_count(threads); }
};

// --- encode / decode -------------------------------------------------------

struct EncodeArgs {
  fs::path input;
  fs::path output;
};

void cmd_encode(const EncodeArgs& a, const Globals& g, std::ostream& out) {
  require_file(a.input, "scene file");
  require_extension(a.output, {".obj", ".ply"});
  require_writable_parent(a.output);
  const auto start = Clock::now();
  const LoadedScene scene = load_scene(a.input);
  const TriangleSoup soup = encode_soup(scene.gaussians);
  save_soup(soup, a.output);
  out << "encoded N=" << soup.size() << " gaussians into " << a.output.string() << " in "
      << std::fixed << std::setprecision(3) << seconds_since(start) << " s\n";
  if (!scene.flatten.poorly_flat.empty()) {
    out << "warning: " << scene.flatten.poorly_flat.size()
        << " gaussians were not flat (smallest/middle scale ratio above " << kPoorFlatnessRatio << ")\n";
    if (g.verbosity > 0) {
      for (auto i : scene.flatten.poorly_flat) out << "  gaussian " << i << '\n';
    }
  }
}

struct DecodeArgs {
  fs::path input;
  fs::path output;
};

void cmd_decode(const DecodeArgs& a, const Globals&, std::ostream& out) {
  require_file(a.input, "soup file");
  require_extension(a.output, {".ply"});
  require_writable_parent(a.output);
  const auto start = Clock::now();
  const TriangleSoup soup = load_soup(a.input);
  const auto gaussians = decode_soup(soup);
  save_scene(gaussians, a.output);
  out << "decoded N=" << gaussians.size() << " gaussians into " << a.output.string() << " in "
      << std::fixed << std::setprecision(3) << seconds_since(start) << " s\n";
}

// --- propagate -------------------------------------------------------------

struct PropagateArgs {
  fs::path soup;
  fs::path original;
  fs::path edited;
  fs::path output;
  fs::path scene;
  fs::path report;
};

void cmd_propagate(const PropagateArgs& a, const Globals& g, std::ostream& out) {
  require_file(a.soup, "soup file");
  require_file(a.original, "original mesh");
  require_file(a.edited, "edited mesh");
  if (a.output.empty() && a.scene.empty()) {
    throw Error(Errc::invalid_argument, "nothing to write: pass --output and/or --scene");
  }
  if (!a.output.empty()) {
    require_extension(a.output, {".obj", ".ply"});
    require_writable_parent(a.output);
  }
  if (!a.scene.empty()) {
    require_extension(a.scene, {".ply"});
    require_writable_parent(a.scene);
  }
  if (!a.report.empty()) require_writable_parent(a.report);

  const TriangleSoup soup = load_soup(a.soup);
  const IndexedMesh original = load_mesh(a.original);
  const IndexedMesh edited = load_mesh(a.edited);

  const auto start = Clock::now();
  const EditPair pair = validate_edit_pair(original, edited);
  const CentroidIndex index(original);
  const PropagationResult result = propagate_soup(soup, pair, index, {.threads = g.thread_count()});
  const double elapsed = seconds_since(start);

  if (!a.output.empty()) save_soup(result.soup, a.output);
  if (!a.scene.empty()) save_scene(decode_soup(result.soup), a.scene);
  if (!a.report.empty()) {
    std::ofstream table(a.report);
    if (!table) throw Error(Errc::io_failure, "cannot open " + a.report.string() + " for writing");
    result.report.write_table(table);
    if (!table.flush()) throw Error(Errc::io_failure, "write failed for " + a.report.string());
  }

  out << std::setw(10) << "Vertices" << std::setw(10) << "Faces" << std::setw(12) << "Time [s]" << '\n'
      << std::setw(10) << original.vertex_count() << std::setw(10) << original.face_count()
      << std::setw(12) << std::fixed << std::setprecision(6) << std::max(elapsed, 1e-6) << '\n';
  out.unsetf(std::ios::floatfield);
  out << "propagated N=" << result.soup.size() << " triangles, flagged "
      << result.report.flagged_count() << '\n';
  if (g.verbosity > 0) result.report.write_summary(out);
}

// --- sample ----------------------------------------------------------------

struct SampleArgs {
  fs::path mesh;
  fs::path output;
  std::size_t count = kDefaultSampleCount;
  std::uint64_t seed = 0;
  fs::path sdf;
  double beta = kDefaultBeta;
  bool normalize_opacity = false;
};

void cmd_sample(const SampleArgs& a, const Globals& g, std::ostream& out) {
  require_file(a.mesh, "mesh file");
  require_extension(a.output, {".ply", ".tsv"});
  require_writable_parent(a.output);
  std::optional<AnalyticSdf> sdf;
  if (!a.sdf.empty()) {
    require_file(a.sdf, "sdf description");
    sdf = load_sdf(a.sdf);
  }
  const OpacityParams params{a.beta, a.normalize_opacity};
  bell_opacity(0.0, params);  // validates beta before any work

  const IndexedMesh mesh = load_mesh(a.mesh);
  const auto samples = sample_surface(mesh, a.count, a.seed, g.thread_count());

  if (lower_extension(a.output) == ".tsv") {
    std::ofstream file(a.output);
    if (!file) throw Error(Errc::io_failure, "cannot open " + a.output.string() + " for writing");
    file << "x\ty\tz\tface\tnx\tny\tnz\n" << std::setprecision(17);
    for (const auto& s : samples) {
      file << s.point.x() << '\t' << s.point.y() << '\t' << s.point.z() << '\t' << s.face_id << '\t'
           << s.normal.x() << '\t' << s.normal.y() << '\t' << s.normal.z() << '\n';
    }
    if (!file.flush()) throw Error(Errc::io_failure, "write failed for " + a.output.string());
  } else {
    // Initial flat Gaussians lying in their face plane, sized to tile the
    // surface, with opacity from the surface prior when one is given.
    double area = 0.0;
    for (std::size_t f = 0; f < mesh.face_count(); ++f) {
      const MeshFace face = mesh_face(mesh, f);
      area += triangle_area(face.w0, face.w1, face.w2);
    }
    const double scale = std::sqrt(area / double(std::max<std::size_t>(1, a.count)));
    std::vector<FlatGaussian> gaussians;
    gaussians.reserve(samples.size());
    for (const auto& s : samples) {
      const MeshFace face = mesh_face(mesh, s.face_id);
      Mat3 r;
      r.col(0) = s.normal;
      r.col(1) = (face.w1 - face.w0).normalized();
      r.col(2) = r.col(0).cross(r.col(1));
      FlatGaussian gauss;
      gauss.center = s.point;
      gauss.rotation = Quat(r).normalized();
      gauss.scales = Vec2(scale, scale);
      gauss.appearance.opacity = sdf ? surface_opacity(*sdf, s.point, params) : 0.5;
      gaussians.push_back(std::move(gauss));
    }
    save_scene(gaussians, a.output);
  }
  out << "sampled " << samples.size() << " points from " << mesh.face_count() << " faces into "
      << a.output.string() << '\n';
}

// --- render ----------------------------------------------------------------

struct RenderArgs {
  fs::path scene;
  fs::path output;
  std::vector<std::size_t> size = {512, 512};
  std::vector<double> eye;
  std::vector<double> target;
  std::vector<double> up = {0.0, 1.0, 0.0};
  std::vector<double> view;
  std::vector<double> background = {1.0, 1.0, 1.0};
};

Vec3 to_vec3(const std::vector<double>& v) { return Vec3(v[0], v[1], v[2]); }

void cmd_render(const RenderArgs& a, const Globals& g, std::ostream& out) {
  require_file(a.scene, "scene file");
  require_extension(a.output, {".ppm"});
  require_writable_parent(a.output);
  const LoadedScene scene = load_scene(a.scene);

  Eigen::AlignedBox3d box;
  for (const auto& gauss : scene.gaussians) box.extend(gauss.center);
  if (box.isEmpty()) box.extend(Vec3::Zero());
  const Vec3 center = box.center();
  const double extent = std::max(box.diagonal().maxCoeff(), 1e-3) * 1.2;

  const Vec3 target = a.target.empty() ? center : to_vec3(a.target);
  const Vec3 eye = a.eye.empty() ? Vec3(target + Vec3(0.0, 0.0, 2.0 * extent)) : to_vec3(a.eye);
  const double aspect = double(a.size[0]) / double(a.size[1]);
  const double view_w = a.view.empty() ? extent * std::max(1.0, aspect) : a.view[0];
  const double view_h = a.view.empty() ? extent * std::max(1.0, 1.0 / aspect) : a.view[1];
  if ((eye - target).norm() == 0.0 || to_vec3(a.up).cross(target - eye).norm() == 0.0) {
    throw Error(Errc::invalid_argument, "degenerate camera: eye, target and up must span a frame");
  }
  const OrthoCamera camera =
      OrthoCamera::look_at(eye, target, to_vec3(a.up), view_w, view_h, a.size[0], a.size[1]);

  const auto start = Clock::now();
  const Image image = render(scene.gaussians, camera, to_vec3(a.background), {.threads = g.thread_count()});
  write_image(image, a.output);
  out << "rendered " << scene.gaussians.size() << " gaussians to " << a.output.string() << " ("
      << image.width << "x" << image.height << ") in " << std::fixed << std::setprecision(3)
      << seconds_since(start) << " s\n";
}

// --- validate --------------------------------------------------------------

struct ValidateArgs {
  fs::path input;
  fs::path sdf;
  double beta = kDefaultBeta;
};

bool is_scene_ply(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::string line;
  while (std::getline(in, line) && line.rfind("end_header", 0) != 0) {
    if (line.find("f_dc_0") != std::string::npos) return true;
  }
  return false;
}

void validate_scene(const ValidateArgs& a, std::ostream& out) {
  const LoadedScene scene = load_scene(a.input);
  std::size_t poorly_flat = scene.flatten.poorly_flat.size();
  out << "scene: " << a.input.string() << '\n'
      << "gaussians: " << scene.gaussians.size() << '\n'
      << "higher-order color coefficients: "
      << (scene.gaussians.empty() ? 0 : scene.gaussians.front().appearance.color.rest.size()) << '\n'
      << "poorly flat: " << poorly_flat << " (max smallest/middle ratio " << scene.flatten.max_ratio << ")\n";
  if (!a.sdf.empty()) {
    require_file(a.sdf, "sdf description");
    const AnalyticSdf sdf = load_sdf(a.sdf);
    const OpacityParams params{a.beta, false};
    double loss = 0.0, max_loss = 0.0, opacity_gap = 0.0;
    for (const auto& g : scene.gaussians) {
      const double l = normal_loss(gaussian_normal(g), sdf.gradient(g.center));
      loss += l;
      max_loss = std::max(max_loss, l);
      opacity_gap += std::abs(g.appearance.opacity - surface_opacity(sdf, g.center, params));
    }
    const double n = std::max<double>(1.0, double(scene.gaussians.size()));
    out << "mean normal loss: " << loss / n << '\n'
        << "max normal loss: " << max_loss << '\n'
        << "mean |opacity - surface opacity|: " << opacity_gap / n << '\n';
  }
}

void cmd_validate(const ValidateArgs& a, const Globals&, std::ostream& out) {
  require_file(a.input, "input file");
  const auto ext = lower_extension(a.input);
  if (ext == ".ppm") {
    const Image image = read_image(a.input);
    out << "image: " << image.width << "x" << image.height << '\n';
    return;
  }
  if (ext == ".sdf" || ext == ".txt") {
    const AnalyticSdf sdf = load_sdf(a.input);
    out << "sdf: " << a.input.string() << "\nvalue at origin: " << sdf.eval(Vec3::Zero()) << '\n';
    return;
  }
  if (ext == ".ply" && is_scene_ply(a.input)) {
    validate_scene(a, out);
    return;
  }
  if (ext == ".obj" || ext == ".ply") {
    if (fs::exists(sidecar_path(a.input))) {
      const TriangleSoup soup = load_soup(a.input);
      decode_soup(soup);  // every triangle must decode
      out << "soup: " << a.input.string() << "\ntriangles: " << soup.size() << '\n';
      return;
    }
    const IndexedMesh mesh = load_mesh(a.input);
    std::size_t degenerate = 0;
    for (std::size_t f = 0; f < mesh.face_count(); ++f) {
      const MeshFace face = mesh_face(mesh, f);
      degenerate += is_degenerate(face.w0, face.w1, face.w2);
    }
    out << "mesh: " << a.input.string() << "\nvertices: " << mesh.vertex_count()
        << "\nfaces: " << mesh.face_count() << "\ndegenerate faces: " << degenerate
        << "\nbounding diagonal: " << bounding_diagonal(mesh) << '\n';
    return;
  }
  throw Error(Errc::invalid_argument, "cannot tell what kind of file " + a.input.string() + " is");
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
  std::size_t soup_size = 100000;
  std::vector<std::size_t> faces{synthetic::kResolutionSweepFaces.begin(),
                                 synthetic::kResolutionSweepFaces.end()};
  std::uint64_t seed = 0;
};

void cmd_bench(const BenchArgs& a, const Globals& g, std::ostream& out) {
  out << std::setw(10) << "Vertices" << std::setw(10) << "Faces" << std::setw(12) << "Time [s]"
      << std::setw(10) << "Flagged" << '\n';
  double previous = 0.0;
  bool monotone = true;
  for (std::size_t target : a.faces) {
    const IndexedMesh original = synthetic::wave_grid(target);
    const IndexedMesh edited = synthetic::twist_bend(original);
    const TriangleSoup soup = synthetic::surface_soup(original, a.soup_size, a.seed);
    const auto t = synthetic::time_edit(soup, original, edited, g.thread_count());
    monotone = monotone && t.seconds >= previous;
    previous = t.seconds;
    out << std::setw(10) << t.vertices << std::setw(10) << t.faces << std::setw(12) << std::fixed
        << std::setprecision(3) << t.seconds << std::setw(10) << t.flagged << '\n';
    out.flush();
  }
  out << "soup triangles: " << a.soup_size << ", threads: " << g.thread_count()
      << ", time non-decreasing with faces: " << (monotone ? "yes" : "no") << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mesh-driven editing of flat Gaussian scenes through triangle soups", "splatedit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "splatedit 0.1.0");

  Globals globals;
  std::size_t threads = 0;
  app.add_option("--threads", threads,
                 std::string("Worker threads (0 = $") + kThreadsEnvVar + " or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("-v,--verbose", globals.verbosity, "More output (repeatable)");

  EncodeArgs encode;
  auto* encode_cmd = app.add_subcommand("encode", "Scene file -> triangle soup (+ attribute sidecar)");
  encode_cmd->add_option("input", encode.input, "Scene .ply")->required();
  encode_cmd->add_option("-o,--output", encode.output, "Soup .obj or .ply")->required();

  DecodeArgs decode;
  auto* decode_cmd = app.add_subcommand("decode", "Triangle soup -> scene file");
  decode_cmd->add_option("input", decode.input, "Soup .obj or .ply")->required();
  decode_cmd->add_option("-o,--output", decode.output, "Scene .ply")->required();

  PropagateArgs prop;
  auto* prop_cmd = app.add_subcommand("propagate", "Apply an edited mesh to a triangle soup");
  prop_cmd->add_option("--soup", prop.soup, "Input soup .obj/.ply")->required();
  prop_cmd->add_option("--original", prop.original, "Original mesh .obj/.ply")->required();
  prop_cmd->add_option("--edited", prop.edited, "Edited mesh, same faces")->required();
  prop_cmd->add_option("-o,--output", prop.output, "Edited soup .obj/.ply");
  prop_cmd->add_option("--scene", prop.scene, "Also decode the edited soup into this scene .ply");
  prop_cmd->add_option("--report", prop.report, "Association table (.tsv)");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Area-weighted surface samples of a mesh");
  sample_cmd->add_option("mesh", sample.mesh, "Mesh .obj/.ply")->required();
  sample_cmd->add_option("-o,--output", sample.output,
                         ".tsv point table or .ply scene of initial flat gaussians")
      ->required();
  sample_cmd->add_option("-n,--count", sample.count, "Number of samples")->capture_default_str();
  sample_cmd->add_option("--seed", sample.seed, "Random seed")->capture_default_str();
  sample_cmd->add_option("--sdf", sample.sdf, "Surface description for opacity conditioning");
  sample_cmd->add_option("--beta", sample.beta, "Opacity sharpness")->capture_default_str();
  sample_cmd->add_flag("--normalize-opacity", sample.normalize_opacity,
                       "Scale the opacity bell so its peak is 1");

  RenderArgs rend;
  auto* render_cmd = app.add_subcommand("render", "Orthographic preview of a scene as .ppm");
  render_cmd->add_option("scene", rend.scene, "Scene .ply")->required();
  render_cmd->add_option("-o,--output", rend.output, "Image .ppm")->required();
  render_cmd->add_option("--size", rend.size, "Image width height")->expected(2)->capture_default_str();
  render_cmd->add_option("--eye", rend.eye, "Camera position")->expected(3);
  render_cmd->add_option("--target", rend.target, "Look-at point")->expected(3);
  render_cmd->add_option("--up", rend.up, "Up hint")->expected(3)->capture_default_str();
  render_cmd->add_option("--view", rend.view, "View width height in world units")->expected(2);
  render_cmd->add_option("--background", rend.background, "Background RGB in [0,1]")
      ->expected(3)
      ->capture_default_str();

  ValidateArgs val;
  auto* validate_cmd = app.add_subcommand("validate", "Check any supported file and summarize it");
  validate_cmd->add_option("input", val.input, "Scene, soup, mesh, image or sdf description")->required();
  validate_cmd->add_option("--sdf", val.sdf, "Score a scene against this surface description");
  validate_cmd->add_option("--beta", val.beta, "Opacity sharpness")->capture_default_str();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Edit time across synthetic mesh resolutions");
  bench_cmd->add_option("--soup-size", bench.soup_size, "Soup triangles")->capture_default_str();
  bench_cmd->add_option("--faces", bench.faces, "Target face counts")->delimiter(',');
  bench_cmd->add_option("--seed", bench.seed, "Random seed")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (threads > 0) globals.threads = threads;

  try {
    if (*encode_cmd) cmd_encode(encode, globals, out);
    if (*decode_cmd) cmd_decode(decode, globals, out);
    if (*prop_cmd) cmd_propagate(prop, globals, out);
    if (*sample_cmd) cmd_sample(sample, globals, out);
    if (*render_cmd) cmd_render(rend, globals, out);
    if (*validate_cmd) cmd_validate(val, globals, out);
    if (*bench_cmd) cmd_bench(bench, globals, out);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return static_cast<int>(e.error_class());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace splatedit::cli
