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

#include "splatedit/surface_prior.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "splatedit/error.hpp"
#include "text.hpp"

namespace splatedit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double box_distance(const Box& b, const Vec3& x) {
  const Vec3 q = (x - b.center).cwiseAbs() - b.half_extents;
  return q.cwiseMax(0.0).norm() + std::min(q.maxCoeff(), 0.0);
}

Vec3 box_gradient(const Box& b, const Vec3& x) {
  const Vec3 p = x - b.center;
  const Vec3 q = p.cwiseAbs() - b.half_extents;
  const Vec3 sign = p.unaryExpr([](double v) { return v < 0.0 ? -1.0 : 1.0; });
  if (q.maxCoeff() > 0.0) {
    return q.cwiseMax(0.0).normalized().cwiseProduct(sign);
  }
  int axis = 0;
  q.maxCoeff(&axis);
  Vec3 g = Vec3::Zero();
  g[axis] = sign[axis];
  return g;
}

}  // namespace

double AnalyticSdf::eval(const Vec3& x) const {
  return std::visit(
      overloaded{
          [&](const Sphere& s) { return (x - s.center).norm() - s.radius; },
          [&](const Box& b) { return box_distance(b, x); },
          [&](const Plane& p) {
            const double len = p.normal.norm();
            return (p.normal.dot(x) - p.offset) / len;
          },
          [&](const Union& u) {
            double d = std::numeric_limits<double>::infinity();
            for (const auto& c : u.children) d = std::min(d, c.eval(x));
            return d;
          },
          [&](const Intersection& u) {
            double d = -std::numeric_limits<double>::infinity();
            for (const auto& c : u.children) d = std::max(d, c.eval(x));
            return d;
          },
      },
      shape_);
}

Vec3 AnalyticSdf::gradient(const Vec3& x) const {
  return std::visit(
      overloaded{
          [&](const Sphere& s) -> Vec3 {
            const Vec3 d = x - s.center;
            const double len = d.norm();
            return len > 0.0 ? Vec3(d / len) : Vec3(Vec3::UnitX());
          },
          [&](const Box& b) -> Vec3 { return box_gradient(b, x); },
          [&](const Plane& p) -> Vec3 { return p.normal.normalized(); },
          [&](const Union& u) -> Vec3 {
            const AnalyticSdf* active = nullptr;
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : u.children) {
              const double d = c.eval(x);
              if (!active || d < best) best = d, active = &c;
            }
            return active ? active->gradient(x) : Vec3(Vec3::Zero());
          },
          [&](const Intersection& u) -> Vec3 {
            const AnalyticSdf* active = nullptr;
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& c : u.children) {
              const double d = c.eval(x);
              if (!active || d > best) best = d, active = &c;
            }
            return active ? active->gradient(x) : Vec3(Vec3::Zero());
          },
      },
      shape_);
}

Vec3 finite_diff_grad(const AnalyticSdf& sdf, const Vec3& x, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(Errc::invalid_argument, "finite-difference step must be positive");
  }
  Vec3 g;
  for (int k = 0; k < 3; ++k) {
    Vec3 plus = x;
    Vec3 minus = x;
    plus[k] += h;
    minus[k] -= h;
    g[k] = (sdf.eval(plus) - sdf.eval(minus)) / (2.0 * h);
  }
  return g;
}

// --- Scene description -----------------------------------------------------

namespace {

struct SdfParser {
  std::istream& in;
  std::size_t line_no = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::malformed, "sdf line " + std::to_string(line_no) + ": " + what, line_no);
  }

  template <int N>
  std::array<double, N> numbers(std::istringstream& words, const char* shape) {
    std::array<double, N> out{};
    std::string token;
    for (auto& v : out) {
      if (!(words >> token) || !text::parse_double(token, v) || !std::isfinite(v)) {
        fail(std::string("expected ") + std::to_string(N) + " finite numbers after '" + shape + "'");
      }
    }
    if (words >> token) fail("unexpected trailing token '" + token + "'");
    return out;
  }

  // Reads shapes until `end` (nested) or end of input (top level).
  std::vector<AnalyticSdf> block(bool nested) {
    std::vector<AnalyticSdf> shapes;
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream words(line);
      std::string keyword;
      if (!(words >> keyword)) continue;
      if (keyword == "end") {
        if (!nested) fail("'end' without an open union/intersection");
        return shapes;
      }
      if (keyword == "sphere") {
        auto v = numbers<4>(words, "sphere");
        if (!(v[3] > 0.0)) fail("sphere radius must be positive");
        shapes.emplace_back(Sphere{Vec3(v[0], v[1], v[2]), v[3]});
      } else if (keyword == "box") {
        auto v = numbers<6>(words, "box");
        if (!(v[3] > 0.0 && v[4] > 0.0 && v[5] > 0.0)) fail("box half-extents must be positive");
        shapes.emplace_back(Box{Vec3(v[0], v[1], v[2]), Vec3(v[3], v[4], v[5])});
      } else if (keyword == "plane") {
        auto v = numbers<4>(words, "plane");
        const Vec3 n(v[0], v[1], v[2]);
        if (!(n.norm() > 0.0)) fail("plane normal must be non-zero");
        shapes.emplace_back(Plane{n, v[3]});
      } else if (keyword == "union" || keyword == "intersection") {
        std::string token;
        if (words >> token) fail("unexpected token after '" + keyword + "'");
        const std::size_t opened = line_no;
        auto children = block(true);
        if (children.empty()) {
          line_no = opened;
          fail("empty " + keyword);
        }
        if (keyword == "union") {
          shapes.emplace_back(Union{std::move(children)});
        } else {
          shapes.emplace_back(Intersection{std::move(children)});
        }
      } else {
        fail("unknown shape '" + keyword + "'");
      }
    }
    if (nested) fail("missing 'end'");
    return shapes;
  }
};

}  // namespace

AnalyticSdf parse_sdf(std::istream& in) {
  SdfParser parser{in};
  auto shapes = parser.block(false);
  if (shapes.empty()) throw Error(Errc::malformed, "sdf description contains no shapes");
  if (shapes.size() == 1) return std::move(shapes.front());
  return AnalyticSdf(Union{std::move(shapes)});
}

AnalyticSdf load_sdf(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_failure, "cannot open sdf description " + path.string());
  try {
    return parse_sdf(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what(), e.index());
  }
}

// --- Surface terms ---------------------------------------------------------

double bell_opacity(double distance, const OpacityParams& params) {
  if (!(params.beta > 0.0) || !std::isfinite(params.beta)) {
    throw Error(Errc::invalid_argument, "beta must be positive and finite");
  }
  // With t = exp(-b|x|) <= 1 the expression t / (1 + t)^2 equals the bell
  // curve (it is even in x) and cannot overflow.
  const double t = std::exp(-params.beta * std::abs(distance));
  const double value = t / ((1.0 + t) * (1.0 + t));
  return params.normalize_peak ? 4.0 * value : value;
}

double normal_loss(const Vec3& normal, const Vec3& grad) {
  if (!normal.allFinite() || !grad.allFinite()) {
    throw Error(Errc::non_finite, "non-finite normal or gradient");
  }
  if (std::abs(normal.norm() - 1.0) > 1e-6) {
    throw Error(Errc::invalid_argument, "normal must be a unit vector");
  }
  return std::abs(1.0 - std::abs(normal.dot(grad)));
}

}  // namespace splatedit
