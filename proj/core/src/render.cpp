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

#include "splatedit/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <string>

#include "splatedit/error.hpp"
#include "splatedit/parallel.hpp"

namespace splatedit {

OrthoCamera OrthoCamera::look_at(const Vec3& eye, const Vec3& target, const Vec3& up,
                                 double view_width, double view_height,
                                 std::size_t image_width, std::size_t image_height) {
  const Vec3 forward = (target - eye).normalized();
  const Vec3 right = forward.cross(up).normalized();
  const Vec3 true_up = right.cross(forward);
  OrthoCamera cam;
  cam.position = eye;
  cam.orientation.col(0) = right;
  cam.orientation.col(1) = true_up;
  cam.orientation.col(2) = forward;
  cam.view_width = view_width;
  cam.view_height = view_height;
  cam.image_width = image_width;
  cam.image_height = image_height;
  return cam;
}

void validate(const OrthoCamera& camera) {
  if (!camera.position.allFinite() || !camera.orientation.allFinite() ||
      !std::isfinite(camera.view_width) || !std::isfinite(camera.view_height)) {
    throw Error(Errc::non_finite, "camera has non-finite parameters");
  }
  if (!(camera.view_width > 0.0) || !(camera.view_height > 0.0)) {
    throw Error(Errc::invalid_argument, "camera view extents must be positive");
  }
  if (camera.image_width == 0 || camera.image_height == 0) {
    throw Error(Errc::invalid_argument, "image resolution must be positive");
  }
  const Mat3& o = camera.orientation;
  if (!(o.transpose() * o).isIdentity(1e-6)) {
    throw Error(Errc::invalid_argument, "camera orientation is not orthonormal");
  }
}

Rgb dc_to_rgb(const Vec3& f_dc) {
  return (Rgb::Constant(0.5) + kShC0 * f_dc).cwiseMax(0.0).cwiseMin(1.0);
}

namespace {

struct Splat {
  double x = 0.0;  // footprint center in pixel coordinates
  double y = 0.0;
  double depth = 0.0;
  // Inverse footprint covariance (conic).
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double radius_x = 0.0;
  double radius_y = 0.0;
  double opacity = 0.0;
  Rgb color = Rgb::Zero();
};

std::vector<Splat> project(std::span<const FlatGaussian> gaussians, const OrthoCamera& cam) {
  const double px_per_x = static_cast<double>(cam.image_width) / cam.view_width;
  const double px_per_y = static_cast<double>(cam.image_height) / cam.view_height;
  // World direction -> pixel displacement (image y grows downwards).
  Eigen::Matrix<double, 2, 3> to_pixels;
  to_pixels.row(0) = px_per_x * cam.orientation.col(0).transpose();
  to_pixels.row(1) = -px_per_y * cam.orientation.col(1).transpose();

  std::vector<Splat> splats;
  splats.reserve(gaussians.size());
  for (const auto& g : gaussians) {
    const Vec3 p = cam.orientation.transpose() * (g.center - cam.position);
    const Mat3 r = g.rotation_matrix();
    const Eigen::Vector2d a1 = to_pixels * r.col(1) * g.scales.x();
    const Eigen::Vector2d a2 = to_pixels * r.col(2) * g.scales.y();
    const Eigen::Matrix2d cov = a1 * a1.transpose() + a2 * a2.transpose();
    const double det = cov.determinant();
    const double trace = cov.trace();
    // Edge-on footprints collapse to a line and cover no pixel area.
    if (!(det > 1e-12 * trace * trace)) continue;

    Splat s;
    s.x = (p.x() / cam.view_width + 0.5) * static_cast<double>(cam.image_width);
    s.y = (0.5 - p.y() / cam.view_height) * static_cast<double>(cam.image_height);
    s.depth = p.z();
    s.a = cov(1, 1) / det;
    s.b = -cov(0, 1) / det;
    s.c = cov(0, 0) / det;
    s.radius_x = kFootprintCutoff * std::sqrt(cov(0, 0));
    s.radius_y = kFootprintCutoff * std::sqrt(cov(1, 1));
    s.opacity = g.appearance.opacity;
    s.color = dc_to_rgb(g.appearance.color.dc);
    splats.push_back(s);
  }
  // Back to front; stable so equal depths keep input order.
  std::stable_sort(splats.begin(), splats.end(),
                   [](const Splat& l, const Splat& r) { return l.depth > r.depth; });
  return splats;
}

void composite_rows(const std::vector<Splat>& splats, Image& image, std::size_t row_begin,
                    std::size_t row_end) {
  const double cutoff_sq = kFootprintCutoff * kFootprintCutoff;
  const auto w = static_cast<double>(image.width);
  for (const Splat& s : splats) {
    // Pixel (i, j) has its center at (i + 0.5, j + 0.5).
    const double y_lo = std::max(std::ceil(s.y - s.radius_y - 0.5), static_cast<double>(row_begin));
    const double y_hi = std::min(std::floor(s.y + s.radius_y - 0.5), static_cast<double>(row_end) - 1.0);
    const double x_lo = std::max(std::ceil(s.x - s.radius_x - 0.5), 0.0);
    const double x_hi = std::min(std::floor(s.x + s.radius_x - 0.5), w - 1.0);
    if (y_lo > y_hi || x_lo > x_hi) continue;
    for (auto j = static_cast<std::size_t>(y_lo); j <= static_cast<std::size_t>(y_hi); ++j) {
      const double dy = static_cast<double>(j) + 0.5 - s.y;
      for (auto i = static_cast<std::size_t>(x_lo); i <= static_cast<std::size_t>(x_hi); ++i) {
        const double dx = static_cast<double>(i) + 0.5 - s.x;
        const double d_sq = s.a * dx * dx + 2.0 * s.b * dx * dy + s.c * dy * dy;
        if (d_sq > cutoff_sq) continue;
        const double alpha = s.opacity * std::exp(-0.5 * d_sq);
        Rgb& px = image.at(i, j);
        px = alpha * s.color + (1.0 - alpha) * px;
      }
    }
  }
}

}  // namespace

Image render(std::span<const FlatGaussian> gaussians, const OrthoCamera& camera,
             const Rgb& background, const RenderOptions& options) {
  validate(camera);
  Image image(camera.image_width, camera.image_height, background);
  const std::vector<Splat> splats = project(gaussians, camera);
  parallel_for(image.height, options.threads, [&](std::size_t begin, std::size_t end) {
    composite_rows(splats, image, begin, end);
  });
  return image;
}

// --- PPM -------------------------------------------------------------------

void write_ppm(std::ostream& out, const Image& image) {
  std::string buf = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  buf.reserve(buf.size() + image.pixels.size() * 3);
  for (const auto& px : image.pixels) {
    for (int k = 0; k < 3; ++k) {
      const double v = std::clamp(px[k], 0.0, 1.0);
      buf += static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0)));
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

Image read_ppm(std::istream& in) {
  std::string magic;
  std::size_t width = 0, height = 0;
  int maxval = 0;
  in >> magic >> width >> height >> maxval;
  if (!in || magic != "P6" || maxval != 255 || width == 0 || height == 0) {
    throw Error(Errc::malformed, "not an 8-bit binary PPM");
  }
  if (width > (std::size_t{1} << 16) || height > (std::size_t{1} << 16)) {
    throw Error(Errc::malformed, "PPM dimensions " + std::to_string(width) + "x" + std::to_string(height) +
                                     " exceed 65536");
  }
  in.get();  // single whitespace after maxval
  std::vector<unsigned char> bytes(width * height * 3);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
    throw Error(Errc::malformed, "truncated PPM payload");
  }
  Image image(width, height);
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    image.pixels[i] = Rgb(bytes[3 * i], bytes[3 * i + 1], bytes[3 * i + 2]) / 255.0;
  }
  return image;
}

void write_image(const Image& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_failure, "cannot open " + path.string() + " for writing");
  write_ppm(out, image);
  out.flush();
  if (!out) throw Error(Errc::io_failure, "write failed for " + path.string());
}

Image read_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_failure, "cannot open image " + path.string());
  return read_ppm(in);
}

}  // namespace splatedit
