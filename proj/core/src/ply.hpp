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

#pragma once

// Minimal reader/writer helpers for binary little-endian PLY, shared by the
// mesh and scene codecs.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "splatedit/error.hpp"

namespace splatedit::ply {

static_assert(std::endian::native == std::endian::little,
              "binary codecs assume a little-endian host");

enum class Type { int8, uint8, int16, uint16, int32, uint32, float32, float64 };

std::size_t type_size(Type t);
std::optional<Type> parse_type(std::string_view name);

struct Property {
  std::string name;
  Type type = Type::float32;
  bool is_list = false;
  Type count_type = Type::uint8;
};

struct Element {
  std::string name;
  std::size_t count = 0;
  std::vector<Property> properties;

  /// Index of the named property or nullopt.
  std::optional<std::size_t> find(std::string_view property) const;
  /// Record size in bytes, or nullopt when a list property makes it variable.
  std::optional<std::size_t> fixed_stride() const;
};

struct Header {
  std::vector<Element> elements;

  const Element* find(std::string_view element) const;
};

/// Consumes the header through `end_header`. Only binary_little_endian 1.0 is
/// accepted. Throws Error(malformed) with the header line number.
Header read_header(std::istream& in);

/// Bounds-checked cursor over the payload bytes.
class Cursor {
 public:
  explicit Cursor(std::vector<char> bytes) : bytes_(std::move(bytes)) {}

  static Cursor read_rest(std::istream& in);

  double scalar(Type t);
  std::uint64_t count(Type t);
  void skip(std::size_t n);
  std::size_t offset() const { return offset_; }
  std::size_t remaining() const { return bytes_.size() - offset_; }

 private:
  const char* take(std::size_t n);

  std::vector<char> bytes_;
  std::size_t offset_ = 0;
};

template <typename T>
void put(std::string& out, T value) {
  char raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  out.append(raw, sizeof(T));
}

}  // namespace splatedit::ply
